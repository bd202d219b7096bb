#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcp/absorption.hpp"
#include "mcp/cover.hpp"
#include "mcp/embed.hpp"
#include "mcp/exact.hpp"
#include "mcp/graph.hpp"
#include "mcp/reduced.hpp"
#include "mcp/regularity.hpp"

namespace mcp {

struct PipelineParams {
  /// d is always 1/r; regularity.p is used only when p_override > 0,
  /// otherwise p is the edge density of g.
  RegularityParams regularity;
  double p_override = 0.0;
  double u_probability = 0.25;
  AbsorbOptions absorb;
  EmbedOptions embed;
  SolveBudget budget;
  /// Enforce the allocation preconditions (m ≥ 90t³s, δ(R) ≥ 2t/3,
  /// 10/9-balance). Unreachable at desk scale, so off by default.
  bool strict_allocation = false;
  /// Exact solver for n ≤ budget.max_vertices, Hamilton cycle for a
  /// complete colour class.
  bool shortcuts = true;
  std::uint64_t seed = 0;
};

struct PipelineStats {
  double p = 0.0;
  int t_prime = 0;
  int t = 0;
  std::vector<int> kept;  // original cluster index of each reduced vertex
  int components = 0;
  int reduced_min_degree = 0;
  std::size_t dropped = 0;  // vertices of pruned clusters
  std::size_t exc = 0;
  std::size_t deg = 0;
  std::size_t inh = 0;
  std::size_t w = 0;
  std::size_t u = 0;
  std::vector<std::string> notes;
};

struct RestResult {
  CycleCover cover;
  std::vector<long long> sizes;  // |V_i*|
  long long m = 0;
  bool balanced = false;  // max |V_i*| ≤ 10m/9
  long long visiting = 0;
  long long embed_nodes = 0;
  int embed_attempts = 0;
  int embed_rotations = 0;
};

/// The W/U construction together with the state the closure needs. The
/// plan keeps a pointer to g, which must outlive it. partition_rest is
/// const and may run concurrently with distinct arguments.
class PipelinePlan {
 public:
  const VertexSet& u() const { return u_; }
  const VertexSet& w() const { return w_; }
  const PipelineStats& stats() const { return stats_; }
  const ReducedGraph& reduced() const { return reduced_; }
  const std::vector<VertexSet>& clusters() const { return clusters_; }

  /// Partition of g − (W ∪ U' ∪ U⁺) into s cycles and at most one vertex.
  /// Requires U' ⊆ U. Stage failures throw StageError ("allocate", "embed").
  RestResult partition_rest(const VertexSet& u_used, const VertexSet& u_plus) const;

 private:
  friend PipelinePlan partition_pipeline(const ColoredGraph& g, int r, const PipelineParams& params);

  const ColoredGraph* g_ = nullptr;
  PipelineParams params_;
  VertexSet u_, w_;
  std::vector<VertexSet> clusters_;  // V_i, i ∈ [t]
  ReducedGraph reduced_;
  PipelineStats stats_;
};

/// Equitable clusters, density-classified reduced graph, pruning to even t,
/// components (γ = params.regularity.gamma), perfect matching, then W and U.
/// Throws StageError ("regularity", "reduced", "matching").
PipelinePlan partition_pipeline(const ColoredGraph& g, int r, const PipelineParams& params = {});

struct FullPartitionResult {
  CycleCover cover;
  std::string route;  // "empty", "exact", "hamilton" or "pipeline"
  double bound = 0.0;  // 1000 r⁴ log r
  bool within_bound = false;
  std::optional<PipelineStats> pipeline;
  std::optional<AbsorbReport> absorb;
  std::optional<RestResult> rest;
};

/// W covered by the absorption pipeline, the rest by the closure; the union
/// is checked to be a partition (logic_error otherwise). Stage failures
/// throw StageError.
FullPartitionResult full_partition(const ColoredGraph& g, int r, const PipelineParams& params = {});

nlohmann::json to_json(const PipelineStats& stats);
nlohmann::json to_json(const RestResult& rest);
nlohmann::json to_json(const AbsorbReport& report);
nlohmann::json to_json(const FullPartitionResult& result);

}  // namespace mcp
