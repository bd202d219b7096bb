#include "mcp/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "mcp/errors.hpp"
#include "mcp/io.hpp"
#include "mcp/rng.hpp"

namespace mcp {

namespace {

using nlohmann::json;

std::string coloring_name(ColoringStrategy s) {
  switch (s) {
    case ColoringStrategy::UniformRandom: return "uniform";
    case ColoringStrategy::RoundRobin: return "round_robin";
    case ColoringStrategy::FixedAssignment: return "fixed";
  }
  return "uniform";
}

ColoringStrategy coloring_from(const std::string& s) {
  if (s == "uniform") return ColoringStrategy::UniformRandom;
  if (s == "round_robin") return ColoringStrategy::RoundRobin;
  throw ParameterError("unknown colouring strategy `" + s + "` (uniform, round_robin)");
}

template <typename T>
void read_opt(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

json pipeline_params_to_json(const PipelineParams& p) {
  const RegularityParams& g = p.regularity;
  return {{"regularity",
           {{"epsilon", g.epsilon},
            {"d", g.d},
            {"p", g.p},
            {"eta", g.eta},
            {"D", g.D},
            {"gamma", g.gamma},
            {"buffer_fraction", g.buffer_fraction},
            {"clusters", g.clusters},
            {"degree_tolerance", g.degree_tolerance},
            {"inheritance_epsilon", g.inheritance_epsilon},
            {"screening_samples", g.screening_samples}}},
          {"p_override", p.p_override},
          {"u_probability", p.u_probability},
          {"absorb", {{"strict", p.absorb.strict}, {"split_retries", p.absorb.split_retries}}},
          {"embed",
           {{"node_limit", p.embed.node_limit},
            {"restarts", p.embed.restarts},
            {"min_run", p.embed.min_run},
            {"run_retries", p.embed.run_retries}}},
          {"budget",
           {{"max_vertices", p.budget.max_vertices},
            {"node_limit", p.budget.node_limit},
            {"time_limit_seconds", p.budget.time_limit_seconds}}},
          {"strict_allocation", p.strict_allocation},
          {"shortcuts", p.shortcuts},
          {"seed", p.seed}};
}

PipelineParams pipeline_params_from_json(const json& j) {
  PipelineParams p;
  if (j.contains("regularity")) {
    const json& g = j.at("regularity");
    RegularityParams& r = p.regularity;
    read_opt(g, "epsilon", r.epsilon);
    read_opt(g, "d", r.d);
    read_opt(g, "p", r.p);
    read_opt(g, "eta", r.eta);
    read_opt(g, "D", r.D);
    read_opt(g, "gamma", r.gamma);
    read_opt(g, "buffer_fraction", r.buffer_fraction);
    read_opt(g, "clusters", r.clusters);
    read_opt(g, "degree_tolerance", r.degree_tolerance);
    read_opt(g, "inheritance_epsilon", r.inheritance_epsilon);
    read_opt(g, "screening_samples", r.screening_samples);
  }
  read_opt(j, "p_override", p.p_override);
  read_opt(j, "u_probability", p.u_probability);
  if (j.contains("absorb")) {
    read_opt(j.at("absorb"), "strict", p.absorb.strict);
    read_opt(j.at("absorb"), "split_retries", p.absorb.split_retries);
  }
  if (j.contains("embed")) {
    read_opt(j.at("embed"), "node_limit", p.embed.node_limit);
    read_opt(j.at("embed"), "restarts", p.embed.restarts);
    read_opt(j.at("embed"), "min_run", p.embed.min_run);
    read_opt(j.at("embed"), "run_retries", p.embed.run_retries);
  }
  if (j.contains("budget")) {
    read_opt(j.at("budget"), "max_vertices", p.budget.max_vertices);
    read_opt(j.at("budget"), "node_limit", p.budget.node_limit);
    read_opt(j.at("budget"), "time_limit_seconds", p.budget.time_limit_seconds);
  }
  read_opt(j, "strict_allocation", p.strict_allocation);
  read_opt(j, "shortcuts", p.shortcuts);
  read_opt(j, "seed", p.seed);
  return p;
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw ParameterError("config: n grid is empty");
  for (int n : n_values) {
    if (n < 1) throw ParameterError("config: n must be positive");
  }
  if (p_values.empty() && !p_coefficient) throw ParameterError("config: need a p grid or p_coefficient");
  if (r < 1 || r > 255) throw ParameterError("config: r must lie in [1, 255]");
  if (trials < 1) throw ParameterError("config: trials must be at least 1");
  for (const GridPoint& g : grid()) {
    if (!(g.p > 0.0 && g.p <= 1.0)) throw ParameterError("config: p must lie in (0,1]");
  }
  pipeline.regularity.validate();
}

std::vector<GridPoint> ExperimentConfig::grid() const {
  std::vector<GridPoint> out;
  for (int n : n_values) {
    if (p_coefficient) {
      const double e = p_exponent.value_or(-1.0 / (2.0 * r));
      out.push_back({n, *p_coefficient * std::pow(static_cast<double>(n), e)});
    }
    for (double p : p_values) out.push_back({n, p});
  }
  return out;
}

json ExperimentConfig::to_json() const {
  json j{{"n", n_values},
         {"p", p_values},
         {"r", r},
         {"coloring", coloring_name(coloring)},
         {"trials", trials},
         {"seed", seed},
         {"pipeline", pipeline_params_to_json(pipeline)}};
  if (p_coefficient) j["p_coefficient"] = *p_coefficient;
  if (p_exponent) j["p_exponent"] = *p_exponent;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("n")) {
      c.n_values = j.at("n").is_array() ? j.at("n").get<std::vector<int>>()
                                        : std::vector<int>{j.at("n").get<int>()};
    }
    if (j.contains("p")) {
      c.p_values = j.at("p").is_array() ? j.at("p").get<std::vector<double>>()
                                        : std::vector<double>{j.at("p").get<double>()};
    }
    if (j.contains("p_coefficient")) c.p_coefficient = j.at("p_coefficient").get<double>();
    if (j.contains("p_exponent")) c.p_exponent = j.at("p_exponent").get<double>();
    read_opt(j, "r", c.r);
    if (j.contains("coloring")) c.coloring = coloring_from(j.at("coloring").get<std::string>());
    read_opt(j, "trials", c.trials);
    read_opt(j, "seed", c.seed);
    if (j.contains("pipeline")) c.pipeline = pipeline_params_from_json(j.at("pipeline"));
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json ExperimentRecord::to_json() const {
  return {{"config", config.to_json()},
          {"grid_index", grid_index},
          {"trial", trial},
          {"n", n},
          {"p", p},
          {"trial_seed", trial_seed},
          {"success", success},
          {"route", route},
          {"failed_stage", failed_stage},
          {"error", error},
          {"cycles", cycles},
          {"bound", bound},
          {"within_bound", within_bound},
          {"valid", valid},
          {"stages", stages},
          {"cover", cover_to_json(cover)},
          {"wall_seconds", wall_seconds}};
}

ExperimentRecord ExperimentRecord::from_json(const json& j) {
  ExperimentRecord r;
  r.config = ExperimentConfig::from_json(j.at("config"));
  r.grid_index = j.at("grid_index").get<std::size_t>();
  r.trial = j.at("trial").get<int>();
  r.n = j.at("n").get<int>();
  r.p = j.at("p").get<double>();
  r.trial_seed = j.at("trial_seed").get<std::uint64_t>();
  r.success = j.at("success").get<bool>();
  r.route = j.at("route").get<std::string>();
  r.failed_stage = j.at("failed_stage").get<std::string>();
  r.error = j.at("error").get<std::string>();
  r.cycles = j.at("cycles").get<std::size_t>();
  r.bound = j.at("bound").get<double>();
  r.within_bound = j.at("within_bound").get<bool>();
  r.valid = j.at("valid").get<bool>();
  r.stages = j.at("stages");
  r.cover = cover_from_json(j.at("cover"));
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

bool ExperimentRecord::same_outcome(const ExperimentRecord& o) const {
  json a = to_json();
  json b = o.to_json();
  a.erase("wall_seconds");
  b.erase("wall_seconds");
  return a == b;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t grid_index, int trial) {
  return Rng::stream(master, (static_cast<std::uint64_t>(grid_index) << 32) | static_cast<std::uint32_t>(trial),
                     "trial")();
}

ExperimentRecord run_trial(const ExperimentConfig& config, std::size_t grid_index, int trial) {
  const auto grid = config.grid();
  if (grid_index >= grid.size()) throw ParameterError("run_trial: grid index out of range");
  ExperimentRecord rec;
  rec.config = config;
  rec.grid_index = grid_index;
  rec.trial = trial;
  rec.n = grid[grid_index].n;
  rec.p = grid[grid_index].p;
  rec.trial_seed = trial_seed(config.seed, grid_index, trial);
  const auto start = std::chrono::steady_clock::now();
  const ColoredGraph base = sample_gnp(rec.n, rec.p, rec.trial_seed);
  const ColoredGraph g = color_edges(base, config.r, config.coloring, rec.trial_seed ^ 0xc0105ULL);
  PipelineParams params = config.pipeline;
  params.seed = rec.trial_seed;
  rec.bound = std::max(1.0, 1000.0 * std::pow(config.r, 4) * std::log(static_cast<double>(config.r)));
  try {
    const FullPartitionResult res = full_partition(g, config.r, params);
    rec.success = true;
    rec.route = res.route;
    rec.cycles = res.cover.size();
    rec.within_bound = res.within_bound;
    rec.valid = verify_partition(g, res.cover).valid;
    rec.cover = res.cover;
    json stages = to_json(res);
    stages.erase("cover");
    rec.stages = stages;
  } catch (const StageError& e) {
    rec.failed_stage = e.stage();
    rec.error = e.what();
  } catch (const ExactnessUnavailable& e) {
    rec.failed_stage = "exact";
    rec.error = e.what();
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

int default_workers() {
  if (const char* env = std::getenv("MCP_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config, int workers) {
  config.validate();
  const std::size_t points = config.grid().size();
  const std::size_t total = points * static_cast<std::size_t>(config.trials);
  std::vector<ExperimentRecord> out(total);
  std::vector<std::string> internal(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t gi = k / config.trials;
      const int tr = static_cast<int>(k % config.trials);
      try {
        out[k] = run_trial(config, gi, tr);
      } catch (const std::exception& e) {
        // Anything beyond a stage failure is a bug; keep it as data.
        out[k].config = config;
        out[k].grid_index = gi;
        out[k].trial = tr;
        out[k].failed_stage = "internal";
        out[k].error = e.what();
      }
    }
  };
  const int w = std::max(1, std::min<int>(workers > 0 ? workers : default_workers(),
                                          static_cast<int>(std::max<std::size_t>(total, 1))));
  std::vector<std::thread> pool;
  for (int i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

ExperimentRecord replay(const ExperimentRecord& record) {
  return run_trial(record.config, record.grid_index, record.trial);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "grid_index,trial,n,p,r,trial_seed,success,route,failed_stage,cycles,bound,within_bound,"
         "valid,wall_seconds\n";
  for (const auto& r : records) {
    out << r.grid_index << ',' << r.trial << ',' << r.n << ',' << r.p << ',' << r.config.r << ','
        << r.trial_seed << ',' << (r.success ? 1 : 0) << ',' << r.route << ',' << r.failed_stage
        << ',' << r.cycles << ',' << r.bound << ',' << (r.within_bound ? 1 : 0) << ','
        << (r.valid ? 1 : 0) << ',' << r.wall_seconds << '\n';
  }
}

json sidecar_json(const std::vector<ExperimentRecord>& records) {
  json out = json::array();
  for (const auto& r : records) out.push_back(r.to_json());
  return out;
}

WilsonInterval wilson_interval(int successes, int trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = trials;
  const double phat = successes / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

json ThresholdEstimate::to_json() const {
  json curve_j = json::array();
  for (const auto& c : curve) {
    curve_j.push_back({{"p", c.p},
                       {"successes", c.successes},
                       {"trials", c.trials},
                       {"wilson", {c.band.lo, c.band.hi}}});
  }
  json j{{"outcome", determined ? "determined" : "undetermined"}, {"curve", curve_j}};
  if (determined) {
    j["p_star"] = p_star;
    j["bracket"] = {bracket_lo, bracket_hi};
  }
  return j;
}

ThresholdEstimate estimate_threshold(int n, int r, int target, int trials, std::uint64_t seed,
                                     const ThresholdOptions& options) {
  if (n < 1 || r < 1 || trials < 1) throw ParameterError("threshold: need n, r, trials >= 1");
  if (target < 0) throw ParameterError("threshold: target must be non-negative");
  if (!(options.p_lo > 0.0 && options.p_lo < options.p_hi && options.p_hi <= 1.0)) {
    throw ParameterError("threshold: need 0 < p_lo < p_hi <= 1");
  }
  ThresholdEstimate est;
  std::size_t call = 0;
  auto evaluate = [&](double p) {
    ExperimentConfig cfg;
    cfg.n_values = {n};
    cfg.p_values = {p};
    cfg.r = r;
    cfg.trials = trials;
    cfg.seed = seed ^ (0x9e3779b97f4a7c15ULL * ++call);
    cfg.pipeline = options.pipeline;
    ThresholdPoint pt;
    pt.p = p;
    pt.trials = trials;
    for (const auto& rec : run_sweep(cfg, options.workers)) {
      const std::size_t count = rec.success ? rec.cycles : static_cast<std::size_t>(rec.n);
      if (static_cast<long long>(count) <= target) ++pt.successes;
    }
    pt.band = wilson_interval(pt.successes, trials);
    est.curve.push_back(pt);
    return 2 * pt.successes >= trials;
  };
  double lo = options.p_lo;
  double hi = options.p_hi;
  if (evaluate(lo)) {
    est.determined = true;
    est.p_star = est.bracket_lo = est.bracket_hi = lo;
    return est;
  }
  if (!evaluate(hi)) return est;
  for (int it = 0; it < options.iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    (evaluate(mid) ? hi : lo) = mid;
  }
  est.determined = true;
  est.bracket_lo = lo;
  est.bracket_hi = hi;
  est.p_star = 0.5 * (lo + hi);
  return est;
}

}  // namespace mcp
