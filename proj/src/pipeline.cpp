#include "mcp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mcp/errors.hpp"
#include "mcp/io.hpp"

namespace mcp {

namespace {

double edge_density(const ColoredGraph& g) {
  const double pairs = 0.5 * g.n() * (g.n() - 1.0);
  return pairs > 0 ? static_cast<double>(g.edge_count()) / pairs : 0.0;
}

double partition_bound(int r) {
  return std::max(1.0, 1000.0 * std::pow(r, 4) * std::log(static_cast<double>(r)));
}

std::optional<Color> complete_color(const ColoredGraph& g) {
  const std::size_t pairs = static_cast<std::size_t>(g.n()) * (g.n() - 1) / 2;
  for (Color c = 1; c <= g.r(); ++c) {
    if (g.edge_count(c) == pairs) return c;
  }
  return std::nullopt;
}

}  // namespace

PipelinePlan partition_pipeline(const ColoredGraph& g, int r, const PipelineParams& params) {
  if (r < 1 || r != g.r()) throw ParameterError("partition_pipeline: r must match the graph");
  params.regularity.validate();
  if (!(params.u_probability > 0.0 && params.u_probability < 1.0)) {
    throw ParameterError("partition_pipeline: U probability must lie in (0,1)");
  }
  const RegularityParams& rp = params.regularity;
  const int n = g.n();
  PipelinePlan plan;
  plan.g_ = &g;
  plan.params_ = params;
  PipelineStats& st = plan.stats_;
  const double p = params.p_override > 0.0 ? params.p_override : edge_density(g);
  st.p = p;
  if (!(p > 0.0)) throw StageError("regularity", "graph has no edges");
  const double d = 1.0 / r;
  const int t_prime = rp.clusters;
  if (n < 4 * t_prime) {
    throw StageError("regularity", "fewer than 4 vertices per cluster");
  }
  st.t_prime = t_prime;

  Rng rng = Rng::stream(params.seed, 0, "clusters");
  const ClusterPartition parts = equitable_partition(n, t_prime, rng);

  // Reduced graph T: the densest colour whose pair clears d − ε and
  // survives sampled screening.
  GraphBuilder tb(t_prime, r);
  std::vector<int> tdeg(static_cast<std::size_t>(t_prime), 0);
  for (int i = 0; i < t_prime; ++i) {
    for (int j = i + 1; j < t_prime; ++j) {
      Color best = 0;
      double best_density = -1.0;
      for (Color c = 1; c <= r; ++c) {
        const AdjacencyView view = g.view(c);
        const double dens = p_density(view, p, parts.clusters[i], parts.clusters[j]);
        if (dens < d - rp.epsilon || dens <= best_density) continue;
        if (rp.screening_samples > 0 &&
            is_regular_pair(view, p, parts.clusters[i], parts.clusters[j], rp.epsilon, d,
                            RegularityMode::Sampled, rp.screening_samples,
                            params.seed ^ (static_cast<std::uint64_t>(i * t_prime + j) << 8 | c))
                .irregular()) {
          continue;
        }
        best = c;
        best_density = dens;
      }
      if (best != 0) {
        tb.add_edge(i, j, best);
        ++tdeg[i];
        ++tdeg[j];
      }
    }
  }
  const ColoredGraph tgraph = std::move(tb).build();

  // T': drop low-degree clusters, then one more if the count is odd.
  std::vector<int> kept;
  const double keep_deg = (1.0 - std::sqrt(rp.epsilon)) * t_prime;
  for (int i = 0; i < t_prime; ++i) {
    if (tdeg[i] + 1e-9 >= keep_deg) kept.push_back(i);
  }
  if (kept.size() % 2 == 1) {
    // Minimum degree inside the kept set; ties go to the highest index.
    int worst = -1;
    int worst_deg = 0;
    for (int i : kept) {
      int dg = 0;
      for (int j : kept) dg += tgraph.adjacent(i, j) ? 1 : 0;
      if (worst < 0 || dg <= worst_deg) {
        worst = i;
        worst_deg = dg;
      }
    }
    kept.erase(std::find(kept.begin(), kept.end(), worst));
    st.notes.push_back("dropped one cluster for parity");
  }
  if (kept.size() < 2) throw StageError("reduced", "fewer than 2 clusters survive pruning");
  const int t = static_cast<int>(kept.size());
  st.t = t;
  st.kept = kept;
  GraphBuilder pb(t, r);
  for (int a = 0; a < t; ++a) {
    for (int b = a + 1; b < t; ++b) {
      const Color c = tgraph.color(kept[a], kept[b]);
      if (c != 0) pb.add_edge(a, b, c);
    }
  }
  const ColoredGraph tprime = std::move(pb).build();
  int min_deg = t;
  for (int a = 0; a < t; ++a) min_deg = std::min(min_deg, tprime.degree(a));
  const double delta = static_cast<double>(min_deg) / t;
  if (delta < rp.gamma) {
    throw StageError("reduced", "minimum degree of T' below gamma*t");
  }
  ReducedGraph comps = choose_components(tprime, delta, rp.gamma);
  std::vector<Edge> matching;
  try {
    matching = perfect_matching(comps);
  } catch (const InfeasibleError& e) {
    throw StageError("matching", e.what());
  }
  plan.reduced_ = comps.with_matching(std::move(matching));
  const ReducedGraph& R = plan.reduced_;
  st.components = static_cast<int>(R.components().size());
  st.reduced_min_degree = n;
  for (int a = 0; a < t; ++a) st.reduced_min_degree = std::min(st.reduced_min_degree, R.graph().degree(a));
  if (3 * st.reduced_min_degree < 2 * t) st.notes.push_back("delta(R) < 2t/3");

  for (int a = 0; a < t; ++a) plan.clusters_.push_back(parts.clusters[kept[a]]);
  std::vector<char> in_kept(static_cast<std::size_t>(t_prime), 0);
  for (int i : kept) in_kept[i] = 1;
  std::vector<Vertex> dropped;
  for (int i = 0; i < t_prime; ++i) {
    if (!in_kept[i]) dropped.insert(dropped.end(), parts.clusters[i].begin(), parts.clusters[i].end());
  }
  const VertexSet dropped_set(std::move(dropped));
  st.dropped = dropped_set.size();

  // V^exc and V_i'.
  std::vector<Bitset> cmask;
  for (const auto& c : plan.clusters_) cmask.push_back(c.mask(n));
  std::vector<Vertex> exc;
  std::vector<VertexSet> vprime(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    const int j = R.partner(i);
    const Color c = R.graph().color(i, j);
    const double need = (d - rp.epsilon) * p * static_cast<double>(plan.clusters_[j].size());
    std::vector<Vertex> keep;
    for (Vertex v : plan.clusters_[i]) {
      if (intersect_count(g.neighbors(v, c), cmask[j]) < need) {
        exc.push_back(v);
      } else {
        keep.push_back(v);
      }
    }
    vprime[i] = VertexSet(std::move(keep));
  }
  const VertexSet exc_set(std::move(exc));
  st.exc = exc_set.size();
  std::vector<Bitset> vpmask;
  for (const auto& vp : vprime) vpmask.push_back(vp.mask(n));

  // V^deg over all vertices.
  std::vector<Vertex> degv;
  for (Vertex v = 0; v < n; ++v) {
    for (int i = 0; i < t; ++i) {
      if (vpmask[i][v]) continue;
      const double mean = p * static_cast<double>(vprime[i].size());
      const double dg = intersect_count(g.neighbors(v), vpmask[i]);
      if (dg < (1.0 - rp.degree_tolerance) * mean || dg > (1.0 + rp.degree_tolerance) * mean) {
        degv.push_back(v);
        break;
      }
    }
  }
  const VertexSet deg_set(std::move(degv));
  st.deg = deg_set.size();

  VertexSet w = set_union(set_union(dropped_set, exc_set), deg_set);

  // V^inh: sampled screening of (N(z, V_i'), V_j') in G'.
  std::vector<Vertex> inh;
  const Bitset w_mask = w.mask(n);
  for (Vertex z = 0; z < n; ++z) {
    if (w_mask[z]) continue;
    for (int i = 0; i < t; ++i) {
      const int j = R.partner(i);
      if (vprime[j].empty()) continue;
      const VertexSet nz = VertexSet::from_mask(g.neighbors(z) & vpmask[i]);
      bool bad;
      if (nz.empty()) {
        bad = d - rp.inheritance_epsilon > 0.0;
      } else {
        bad = is_regular_pair(g.view(R.graph().color(i, j)), p, nz, vprime[j],
                              rp.inheritance_epsilon, d, RegularityMode::Sampled,
                              rp.screening_samples,
                              params.seed ^ (static_cast<std::uint64_t>(z) * 131 + i))
                  .irregular();
      }
      if (bad) {
        inh.push_back(z);
        break;
      }
    }
  }
  const VertexSet inh_set(std::move(inh));
  st.inh = inh_set.size();
  w = set_union(w, inh_set);
  plan.w_ = w;
  st.w = w.size();

  Rng urng = Rng::stream(params.seed, 0, "U");
  const Bitset wm = w.mask(n);
  std::vector<Vertex> u;
  for (int i = 0; i < t; ++i) {
    for (Vertex v : vprime[i]) {
      if (!wm[v] && urng.bernoulli(params.u_probability)) u.push_back(v);
    }
  }
  plan.u_ = VertexSet(std::move(u));
  st.u = plan.u_.size();
  return plan;
}

RestResult PipelinePlan::partition_rest(const VertexSet& u_used, const VertexSet& u_plus) const {
  const ColoredGraph& g = *g_;
  const int n = g.n();
  u_used.check_range(n);
  u_plus.check_range(n);
  if (set_difference(u_used, u_).size() != 0) throw ParameterError("partition_rest: U' must lie in U");
  const VertexSet q = set_union(set_union(w_, u_used), u_plus);
  RestResult out;
  std::vector<VertexSet> star;
  for (const auto& c : clusters_) {
    star.push_back(set_difference(c, q));
    out.sizes.push_back(static_cast<long long>(star.back().size()));
  }
  out.m = *std::min_element(out.sizes.begin(), out.sizes.end());
  out.balanced = 9 * *std::max_element(out.sizes.begin(), out.sizes.end()) <= 10 * out.m;
  if (params_.strict_allocation && !out.balanced) {
    throw StageError("allocate", "clusters V_i* are not 10/9-balanced");
  }
  AllocationResult alloc;
  try {
    alloc = allocate_cycles(reduced_, out.sizes, out.m, {params_.strict_allocation});
  } catch (const ParameterError& e) {
    throw StageError("allocate", e.what());
  } catch (const InfeasibleError& e) {
    throw StageError("allocate", e.what());
  }
  const AllocationCheck check = verify_allocation(reduced_, out.sizes, out.m, alloc);
  if (!check.valid) throw std::logic_error("allocation failed its own check: " + check.violations.front());
  out.visiting = alloc.visiting_vertices;

  EmbedOptions eo = params_.embed;
  eo.seed = params_.seed ^ 0x5bd1e995ULL;
  const EmbedResult emb = embed_blueprint(Blueprint::from(alloc), g, star, eo);
  out.embed_nodes = emb.nodes;
  out.embed_attempts = emb.attempts;
  out.embed_rotations = emb.rotations;
  if (!emb.success) throw StageError("embed", emb.failure);
  out.cover = emb.cover;
  const VertexSet required = set_difference(VertexSet::range(n), q);
  const VerificationReport rep = verify_cover(g, out.cover, required, q);
  if (!rep.valid) throw std::logic_error("closure produced an invalid cover: " + rep.violations.front().detail);
  return out;
}

FullPartitionResult full_partition(const ColoredGraph& g, int r, const PipelineParams& params) {
  if (r < 1 || r != g.r()) throw ParameterError("full_partition: r must match the graph");
  FullPartitionResult res;
  res.bound = partition_bound(r);
  const int n = g.n();
  auto finish = [&](CycleCover cover, std::string route) {
    const VerificationReport rep = verify_partition(g, cover);
    if (!rep.valid) {
      throw std::logic_error("full_partition produced an invalid partition: " +
                             rep.violations.front().detail);
    }
    res.cover = std::move(cover);
    res.route = std::move(route);
    res.within_bound = static_cast<double>(res.cover.size()) <= res.bound;
    return res;
  };
  if (n == 0) return finish({}, "empty");
  if (params.shortcuts) {
    if (n <= params.budget.max_vertices) {
      return finish(min_mono_cycle_partition(g, params.budget).cover, "exact");
    }
    if (const auto c = complete_color(g)) {
      Cycle ham{*c, {}};
      for (Vertex v = 0; v < n; ++v) ham.vertices.push_back(v);
      return finish(CycleCover{{ham}}, "hamilton");
    }
  }

  const PipelinePlan plan = partition_pipeline(g, r, params);
  res.pipeline = plan.stats();
  AbsorptionParams ap;
  ap.r = r;
  ap.p = plan.stats().p;
  ap.beta = std::clamp(static_cast<double>(plan.u().size()) / n, 1e-6, 0.999);
  AbsorbOptions ao = params.absorb;
  ao.seed = params.seed ^ 0x27d4eb2fULL;
  AbsorbReport absorb;
  try {
    absorb = absorb_pipeline(g, plan.u(), plan.w(), ap, ao);
  } catch (const ParameterError& e) {
    throw StageError("absorb", e.what());
  } catch (const InfeasibleError& e) {
    throw StageError("absorb", e.what());
  }
  const VertexSet c1 = absorb.cover.covered();
  const VertexSet u_used = set_intersection(c1, plan.u());
  const VertexSet u_plus = set_difference(c1, set_union(plan.u(), plan.w()));
  RestResult rest = plan.partition_rest(u_used, u_plus);
  CycleCover cover = absorb.cover;
  cover.append(rest.cover);
  res.absorb = std::move(absorb);
  res.rest = std::move(rest);
  return finish(std::move(cover), "pipeline");
}

nlohmann::json to_json(const PipelineStats& s) {
  return {{"p", s.p},           {"t_prime", s.t_prime}, {"t", s.t},
          {"kept", s.kept},     {"components", s.components},
          {"reduced_min_degree", s.reduced_min_degree},
          {"dropped", s.dropped}, {"exc", s.exc},     {"deg", s.deg},
          {"inh", s.inh},       {"w", s.w},             {"u", s.u},
          {"notes", s.notes}};
}

nlohmann::json to_json(const RestResult& r) {
  return {{"cycles", r.cover.size()},      {"sizes", r.sizes},
          {"m", r.m},                      {"balanced", r.balanced},
          {"visiting", r.visiting},        {"embed_nodes", r.embed_nodes},
          {"embed_attempts", r.embed_attempts}, {"embed_rotations", r.embed_rotations}};
}

nlohmann::json to_json(const AbsorbReport& a) {
  return {{"cycles", a.cover.size()},
          {"w1", a.w1.size()},
          {"w2", a.w2.size()},
          {"w3", a.w3.size()},
          {"stage_cycles", {a.stage_cycles[0], a.stage_cycles[1], a.stage_cycles[2]}},
          {"t_used", {a.t_used[0], a.t_used[1]}},
          {"split_attempts", a.split_attempts},
          {"split_violations", a.split_violations},
          {"count_bound", a.count_bound},
          {"spill", a.spill},
          {"spill_bound", a.spill_bound},
          {"stage2_leftover", a.stage2_leftover},
          {"stage2_target", a.stage2_target},
          {"notes", a.notes}};
}

nlohmann::json to_json(const FullPartitionResult& r) {
  nlohmann::json j{{"route", r.route},
                   {"cycles", r.cover.size()},
                   {"bound", r.bound},
                   {"within_bound", r.within_bound},
                   {"cover", cover_to_json(r.cover)}};
  if (r.pipeline) j["pipeline"] = to_json(*r.pipeline);
  if (r.absorb) j["absorb"] = to_json(*r.absorb);
  if (r.rest) j["rest"] = to_json(*r.rest);
  return j;
}

}  // namespace mcp
