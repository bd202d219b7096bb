// Command-line front end: one subcommand per library entry point, JSON on stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcp/absorption.hpp"
#include "mcp/errors.hpp"
#include "mcp/exact.hpp"
#include "mcp/harness.hpp"
#include "mcp/io.hpp"
#include "mcp/pipeline.hpp"
#include "mcp/prob.hpp"
#include "mcp/reduced.hpp"

using nlohmann::json;
using namespace mcp;

namespace {

double density(const ColoredGraph& g) {
  const double pairs = 0.5 * g.n() * (g.n() - 1.0);
  return pairs > 0 ? g.edge_count() / pairs : 0.0;
}

std::vector<Edge> load_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::vector<Edge> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    Edge e{};
    if (ss >> e.u >> e.v) out.push_back(e);
  }
  return out;
}

json set_json(const VertexSet& s) { return s.ids(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monochromatic cycle partitions of coloured random graphs"};
  app.require_subcommand(1);

  std::string graph_path, x_path, y_path, u_path, w_path, pairs_path, reduced_path, sizes_path,
      config_path, out_dir;
  int budget = 16, k = 1, r = 2, n = 0, target = 1, trials = 20, workers = 0;
  double p = 0.0, alpha = 0.5, beta = 0.25;
  long long m = 0;
  std::uint64_t seed = 0;
  bool strict = false, full = false;

  std::string out_path;
  auto* generate = app.add_subcommand("generate", "seeded uniformly coloured G(n,p) in edge-list format");
  generate->add_option("--n", n)->required();
  generate->add_option("--p", p)->required();
  generate->add_option("--r", r)->required();
  generate->add_option("--seed", seed);
  generate->add_option("--out", out_path)->required();

  auto* solve = app.add_subcommand("solve", "exact minimum monochromatic cycle partition");
  solve->add_option("--graph", graph_path)->required();
  solve->add_option("--budget", budget, "largest n solved exactly (max 20)");

  auto* check = app.add_subcommand("check", "probabilistic structure checks");
  check->require_subcommand(1);
  auto* pair_density = check->add_subcommand("pair-density", "e(X,Y) = (1 ± alpha)p|X||Y|");
  pair_density->add_option("--graph", graph_path)->required();
  pair_density->add_option("--x", x_path)->required();
  pair_density->add_option("--y", y_path)->required();
  pair_density->add_option("--alpha", alpha);
  pair_density->add_option("--p", p, "defaults to the edge density");
  auto* triples = check->add_subcommand("triples", "co-degree sums over disjoint pairs");
  triples->add_option("--graph", graph_path)->required();
  triples->add_option("--pairs", pairs_path)->required();
  triples->add_option("--y", y_path)->required();
  triples->add_option("--p", p);
  auto* bad_set = check->add_subcommand("bad-set", "deviant k-sets against X");
  bad_set->add_option("--graph", graph_path)->required();
  bad_set->add_option("--x", x_path)->required();
  bad_set->add_option("--k", k);
  bad_set->add_option("--alpha", alpha);
  bad_set->add_option("--p", p);

  auto* absorb = app.add_subcommand("absorb", "cover W by cycles inside U ∪ W");
  absorb->add_option("--graph", graph_path)->required();
  absorb->add_option("--U", u_path)->required();
  absorb->add_option("--W", w_path)->required();
  absorb->add_option("--beta", beta);
  absorb->add_option("--p", p);
  absorb->add_option("--seed", seed);
  absorb->add_flag("--strict", strict, "literal thresholds and checked preconditions");

  auto* allocate = app.add_subcommand("allocate", "blueprint cycles on a reduced graph");
  allocate->add_option("--reduced", reduced_path)->required();
  allocate->add_option("--sizes", sizes_path)->required();
  allocate->add_option("--m", m)->required();
  allocate->add_flag("--strict", strict, "enforce m >= 90t^3s, delta(R) >= 2t/3 and balance");
  allocate->add_flag("--full", full, "print every cycle");

  auto* pipeline = app.add_subcommand("pipeline", "W/U construction and the closure with U' = U+ = {}");
  pipeline->add_option("--graph", graph_path)->required();
  pipeline->add_option("--r", r)->required();
  pipeline->add_option("--seed", seed);

  auto* partition = app.add_subcommand("partition", "full monochromatic cycle partition");
  partition->add_option("--graph", graph_path)->required();
  partition->add_option("--r", r)->required();
  partition->add_option("--seed", seed);

  auto* sweep = app.add_subcommand("sweep", "parameter sweep; MCP_WORKERS sets parallelism");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--out", out_dir)->required();
  sweep->add_option("--workers", workers);

  auto* threshold = app.add_subcommand("threshold", "bisection estimate of the success threshold");
  threshold->add_option("--n", n)->required();
  threshold->add_option("--r", r)->required();
  threshold->add_option("--target", target)->required();
  threshold->add_option("--trials", trials);
  threshold->add_option("--seed", seed);
  threshold->add_option("--workers", workers);

  CLI11_PARSE(app, argc, argv);

  try {
    json out;
    int status = 0;
    if (*generate) {
      const ColoredGraph g = color_edges(sample_gnp(n, p, seed), r, ColoringStrategy::UniformRandom, seed);
      save_graph(out_path, g);
      out = {{"n", g.n()}, {"r", g.r()}, {"edges", g.edge_count()}};
    } else if (*solve) {
      const ColoredGraph g = load_graph(graph_path);
      SolveBudget b;
      b.max_vertices = budget;
      const PartitionResult res = min_mono_cycle_partition(g, b);
      std::cout << res.count << '\n';
      out = {{"count", res.count}, {"nodes", res.nodes}, {"cover", cover_to_json(res.cover)}};
    } else if (*pair_density) {
      const ColoredGraph g = load_graph(graph_path);
      const auto rep = check_pair_density(g, load_vertex_set(x_path), load_vertex_set(y_path),
                                          p > 0 ? p : density(g), alpha);
      out = {{"check", "pair-density"}, {"edges", rep.edges}, {"measured", rep.measured},
             {"alpha", rep.alpha},      {"pass", rep.pass}};
    } else if (*triples) {
      const ColoredGraph g = load_graph(graph_path);
      const auto rep = check_triple_sums(g, load_pairs(pairs_path), load_vertex_set(y_path),
                                         p > 0 ? p : density(g));
      out = {{"check", "triples"},           {"sum", rep.sum},   {"threshold", rep.threshold},
             {"sparse_regime", rep.sparse_regime}, {"pass", rep.pass}};
    } else if (*bad_set) {
      const ColoredGraph g = load_graph(graph_path);
      const auto rep = find_bad_set(g, load_vertex_set(x_path), k, alpha, p > 0 ? p : density(g));
      out = {{"check", "bad-set"},
             {"y", set_json(rep.y)},
             {"low", rep.low_matching.size()},
             {"high", rep.high_matching.size()},
             {"size_bound", rep.size_bound},
             {"ksets_scanned", rep.ksets_scanned}};
    } else if (*absorb) {
      const ColoredGraph g = load_graph(graph_path);
      AbsorptionParams ap;
      ap.r = g.r();
      ap.beta = beta;
      ap.p = p > 0 ? p : density(g);
      AbsorbOptions ao;
      ao.strict = strict;
      ao.seed = seed;
      const AbsorbReport rep = absorb_pipeline(g, load_vertex_set(u_path), load_vertex_set(w_path), ap, ao);
      out = to_json(rep);
      out["cover"] = cover_to_json(rep.cover);
      out["claimed"] = {{"cycles", rep.count_bound}, {"spill", rep.spill_bound}};
      out["achieved"] = {{"cycles", rep.cover.size()}, {"spill", rep.spill}};
    } else if (*allocate) {
      const ReducedFile rf = load_reduced(reduced_path);
      ReducedGraph red(rf.graph);
      red = red.with_matching(rf.matching.empty() ? perfect_matching(red) : rf.matching);
      const auto sizes = load_sizes(sizes_path);
      const AllocationResult res = allocate_cycles(red, sizes, m, {strict});
      const AllocationCheck chk = verify_allocation(red, sizes, m, res);
      json cycles = json::array();
      for (const auto& c : res.cycles) {
        json cj{{"component", c.component}, {"color", c.color}, {"length", c.vertices.size()}};
        if (full) {
          json clusters = json::array();
          for (Vertex v : c.vertices) clusters.push_back(res.cluster_of[v]);
          cj["vertices"] = c.vertices;
          cj["clusters"] = clusters;
        }
        cycles.push_back(cj);
      }
      json buffers = json::array();
      for (const auto& b : res.buffers) buffers.push_back(b.size());
      out = {{"t", res.t},
             {"vertices", res.vertex_count()},
             {"cycles", cycles},
             {"isolated", res.isolated ? json(*res.isolated) : json(nullptr)},
             {"buffer_sizes", buffers},
             {"visiting_vertices", res.visiting_vertices},
             {"valid", chk.valid},
             {"violations", chk.violations}};
    } else if (*pipeline) {
      const ColoredGraph g = load_graph(graph_path);
      PipelineParams pp;
      pp.seed = seed;
      const PipelinePlan plan = partition_pipeline(g, r, pp);
      out = {{"stats", to_json(plan.stats())}, {"U", set_json(plan.u())}, {"W", set_json(plan.w())}};
      try {
        const RestResult rest = plan.partition_rest({}, {});
        out["rest"] = to_json(rest);
        out["cover"] = cover_to_json(rest.cover);
      } catch (const StageError& e) {
        out["failed_stage"] = e.stage();
        out["error"] = e.what();
        status = 3;
      }
    } else if (*partition) {
      const ColoredGraph g = load_graph(graph_path);
      PipelineParams pp;
      pp.seed = seed;
      out = to_json(full_partition(g, r, pp));
    } else if (*sweep) {
      std::ifstream in(config_path);
      if (!in) throw ParameterError("cannot open " + config_path);
      json cj;
      try {
        in >> cj;
      } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
      }
      const ExperimentConfig cfg = ExperimentConfig::from_json(cj);
      const auto records = run_sweep(cfg, workers);
      std::filesystem::create_directories(out_dir);
      std::ofstream csv(std::filesystem::path(out_dir) / "records.csv");
      write_csv(csv, records);
      std::ofstream side(std::filesystem::path(out_dir) / "records.json");
      side << sidecar_json(records).dump() << '\n';
      std::size_t ok = 0;
      for (const auto& rec : records) ok += rec.success;
      out = {{"records", records.size()}, {"successes", ok}, {"out", out_dir}};
    } else if (*threshold) {
      ThresholdOptions to;
      to.workers = workers;
      out = estimate_threshold(n, r, target, trials, seed, to).to_json();
    }
    std::cout << out.dump(2) << '\n';
    return status;
  } catch (const StageError& e) {
    std::cout << json{{"failed_stage", e.stage()}, {"error", e.what()}}.dump(2) << '\n';
    return 3;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ExactnessUnavailable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
