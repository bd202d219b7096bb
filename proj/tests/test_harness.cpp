#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mcp/errors.hpp"
#include "mcp/harness.hpp"

using namespace mcp;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_values = {6, 9};
  cfg.p_values = {0.4, 0.8};
  cfg.r = 2;
  cfg.trials = 3;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("configuration grid and validation") {
  const auto cfg = small_config();
  CHECK(cfg.grid().size() == 4);

  ExperimentConfig one;
  one.n_values = {7};
  one.p_values = {0.5};
  const auto recs = run_sweep(one, 1);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].success);
  CHECK(recs[0].route == "exact");
  CHECK(recs[0].valid);

  ExperimentConfig scaled;
  scaled.n_values = {16, 81};
  scaled.p_coefficient = 1.0;
  scaled.r = 2;
  const auto grid = scaled.grid();
  REQUIRE(grid.size() == 2);
  CHECK(grid[0].p == doctest::Approx(0.5));
  CHECK(grid[1].p == doctest::Approx(1.0 / 3.0));

  ExperimentConfig bad = one;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = one;
  bad.p_values = {1.5};
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = one;
  bad.n_values.clear();
  CHECK_THROWS_AS(bad.validate(), ParameterError);

  const auto back = ExperimentConfig::from_json(cfg.to_json());
  CHECK(back.to_json() == cfg.to_json());
}

TEST_CASE("sweeps are deterministic and replayable") {
  const auto cfg = small_config();
  const auto a = run_sweep(cfg, 1);
  const auto b = run_sweep(cfg, 2);
  REQUIRE(a.size() == 12);
  REQUIRE(b.size() == a.size());
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].same_outcome(b[i]));
    CHECK(a[i].grid_index == i / 3);
    CHECK(a[i].trial == static_cast<int>(i % 3));
    CHECK(a[i].trial_seed == trial_seed(cfg.seed, a[i].grid_index, a[i].trial));
    seeds.insert(a[i].trial_seed);
    CHECK(replay(a[i]).same_outcome(a[i]));
    CHECK(ExperimentRecord::from_json(a[i].to_json()).same_outcome(a[i]));
    CHECK(a[i].valid);
  }
  CHECK(seeds.size() == a.size());
  CHECK(sidecar_json(a).size() == a.size());
}

TEST_CASE("csv output") {
  const auto recs = run_sweep(small_config(), 1);
  std::stringstream ss;
  write_csv(ss, recs);
  std::string line;
  std::getline(ss, line);
  CHECK(line ==
        "grid_index,trial,n,p,r,trial_seed,success,route,failed_stage,cycles,bound,within_bound,"
        "valid,wall_seconds");
  int rows = 0;
  while (std::getline(ss, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 13);
    ++rows;
  }
  CHECK(rows == 12);
}

TEST_CASE("wilson interval") {
  const double z = 1.959963984540054;
  for (auto [k, n] : {std::pair{0, 10}, {5, 10}, {10, 10}, {37, 50}}) {
    const double ph = static_cast<double>(k) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (ph + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / n + z * z / (4.0 * n * n)) / denom;
    const auto w = wilson_interval(k, n);
    CHECK(w.lo == doctest::Approx(std::max(0.0, centre - half)));
    CHECK(w.hi == doctest::Approx(std::min(1.0, centre + half)));
  }
  CHECK(wilson_interval(5, 10).lo == doctest::Approx(0.2366).epsilon(1e-3));
  CHECK(wilson_interval(0, 0).lo == 0.0);
  CHECK(wilson_interval(0, 0).hi == 1.0);
}

TEST_CASE("threshold estimate") {
  ThresholdOptions opts;
  opts.workers = 1;
  const auto always = estimate_threshold(8, 2, 8, 2, 5, opts);
  CHECK(always.determined);
  CHECK(always.p_star == doctest::Approx(opts.p_lo));
  CHECK(always.curve.size() == 1);

  const auto never = estimate_threshold(8, 2, 0, 2, 5, opts);
  CHECK(!never.determined);
  CHECK(never.curve.size() == 2);
  CHECK(never.to_json().contains("curve"));

  const auto bisected = estimate_threshold(8, 2, 2, 2, 5, opts);
  if (bisected.determined && bisected.curve.size() > 1) {
    CHECK(bisected.bracket_lo < bisected.bracket_hi);
    CHECK(bisected.p_star > bisected.bracket_lo);
  }
  CHECK_THROWS_AS(estimate_threshold(8, 2, -1, 2, 5, opts), ParameterError);
}
