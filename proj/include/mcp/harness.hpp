#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcp/graph.hpp"
#include "mcp/pipeline.hpp"

namespace mcp {

struct GridPoint {
  int n = 0;
  double p = 0.0;
};

struct ExperimentConfig {
  std::vector<int> n_values;
  /// Either an explicit p grid, or p(n) = c·n^e with e defaulting to −1/(2r).
  std::vector<double> p_values;
  std::optional<double> p_coefficient;
  std::optional<double> p_exponent;
  int r = 2;
  ColoringStrategy coloring = ColoringStrategy::UniformRandom;
  int trials = 1;
  std::uint64_t seed = 0;
  PipelineParams pipeline;

  /// Throws ParameterError on an empty grid, trials < 1 or p outside (0,1].
  void validate() const;
  std::vector<GridPoint> grid() const;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::size_t grid_index = 0;
  int trial = 0;
  int n = 0;
  double p = 0.0;
  std::uint64_t trial_seed = 0;
  bool success = false;
  std::string route;
  std::string failed_stage;
  std::string error;
  std::size_t cycles = 0;
  double bound = 0.0;
  bool within_bound = false;
  bool valid = false;
  nlohmann::json stages;
  CycleCover cover;
  double wall_seconds = 0.0;

  nlohmann::json to_json() const;
  static ExperimentRecord from_json(const nlohmann::json& j);
  /// Equality ignoring wall time.
  bool same_outcome(const ExperimentRecord& other) const;
};

/// Seed of trial `trial` at grid point `grid_index`.
std::uint64_t trial_seed(std::uint64_t master, std::size_t grid_index, int trial);

/// One trial: sample G(n,p), colour it, run full_partition. Failures are
/// recorded in the record, never thrown (configuration errors excepted).
ExperimentRecord run_trial(const ExperimentConfig& config, std::size_t grid_index, int trial);

/// Worker count from MCP_WORKERS, else hardware concurrency.
int default_workers();

/// One record per (grid point, trial), ordered by (grid index, trial).
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config, int workers = 0);

ExperimentRecord replay(const ExperimentRecord& record);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
nlohmann::json sidecar_json(const std::vector<ExperimentRecord>& records);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// 95% Wilson score interval for k successes in n trials.
WilsonInterval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct ThresholdPoint {
  double p = 0.0;
  int successes = 0;
  int trials = 0;
  WilsonInterval band;
};

struct ThresholdOptions {
  double p_lo = 0.05;
  double p_hi = 0.95;
  int iterations = 5;
  int workers = 0;
  PipelineParams pipeline;
};

struct ThresholdEstimate {
  bool determined = false;
  double p_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<ThresholdPoint> curve;  // in evaluation order

  nlohmann::json to_json() const;
};

/// Bisection on p for the point where the fraction of trials with at most
/// `target` cycles crosses 1/2. A failed run counts as n cycles (the
/// singleton partition). Undetermined when the rate at p_hi is below 1/2.
ThresholdEstimate estimate_threshold(int n, int r, int target, int trials, std::uint64_t seed,
                                     const ThresholdOptions& options = {});

nlohmann::json pipeline_params_to_json(const PipelineParams& params);
PipelineParams pipeline_params_from_json(const nlohmann::json& j);

}  // namespace mcp
