#include "mcp/absorption.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mcp/errors.hpp"
#include "mcp/prob.hpp"

namespace mcp {

namespace {

std::string format_set(const std::vector<Vertex>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Rule (b): up to `want` disjoint colour-c edges uu' inside U with v ~ u and
// u' ~ w. Greedy first; an exact matching only when greedy falls short.
std::vector<Edge> path_matching(const ColoredGraph& g, Color c, Vertex v, Vertex w,
                                const Bitset& u_mask, int want) {
  const Bitset nv = g.neighbors(v, c) & u_mask;
  const Bitset nw = g.neighbors(w, c) & u_mask;
  if (static_cast<int>(nv.count()) < want || static_cast<int>(nw.count()) < want) return {};

  std::vector<Edge> out;
  Bitset free = u_mask;
  for (auto a = nv.find_first(); a != Bitset::npos && static_cast<int>(out.size()) < want;
       a = nv.find_next(a)) {
    if (!free[a]) continue;
    Bitset cand = g.neighbors(static_cast<Vertex>(a), c) & nw & free;
    const auto b = cand.find_first();
    if (b == Bitset::npos) continue;
    free.reset(a);
    free.reset(b);
    out.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  if (static_cast<int>(out.size()) >= want) return out;

  const Bitset relevant = nv | nw;
  const VertexSet members = VertexSet::from_mask(relevant);
  std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
  SimpleGraph aux(static_cast<int>(members.size()));
  for (Vertex a : members) {
    const Bitset partners = g.neighbors(a, c) & relevant;
    for (auto b = partners.find_next(a); b != Bitset::npos; b = partners.find_next(b)) {
      const bool forward = nv[a] && nw[b];
      const bool backward = nv[b] && nw[a];
      if (forward || backward) aux.add_edge(local[a], local[b]);
    }
  }
  out.clear();
  for (const Edge& e : max_matching(aux)) {
    Vertex a = members[e.u];
    Vertex b = members[e.v];
    if (!(nv[a] && nw[b])) std::swap(a, b);
    out.push_back({a, b});
    if (static_cast<int>(out.size()) == want) break;
  }
  if (static_cast<int>(out.size()) < want) out.clear();
  return out;
}

// Condition (ii) fails iff some t-set X ⊆ U leaves ≥ t vertices of U outside X ∪ N(X).
struct XYWitness {
  std::vector<Vertex> x;
  std::vector<Vertex> y;
};

std::optional<XYWitness> xy_witness_exact(const ColoredGraph& g, const VertexSet& u, int t) {
  const int m = static_cast<int>(u.size());
  if (2 * t > m) return std::nullopt;
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && g.adjacent(u[i], u[j])) nbr[i] |= 1U << j;
    }
  }
  std::vector<Vertex> positions(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) positions[i] = i;
  const std::uint32_t all = m == 32 ? ~0U : ((1U << m) - 1);
  std::optional<XYWitness> found;
  for_each_kset_colex(positions, t, [&](const std::vector<Vertex>& xs) {
    std::uint32_t blocked = 0;
    for (Vertex i : xs) blocked |= nbr[i] | (1U << i);
    const std::uint32_t rest = all & ~blocked;
    if (std::popcount(rest) < t) return true;
    XYWitness wit;
    for (Vertex i : xs) wit.x.push_back(u[i]);
    for (std::uint32_t bits = rest; bits && static_cast<int>(wit.y.size()) < t; bits &= bits - 1) {
      wit.y.push_back(u[std::countr_zero(bits)]);
    }
    found = std::move(wit);
    return false;
  });
  return found;
}

std::optional<XYWitness> xy_witness_sampled(const ColoredGraph& g, const VertexSet& u, int t,
                                            int samples, Rng& rng) {
  const int m = static_cast<int>(u.size());
  if (2 * t > m) return std::nullopt;
  const Bitset u_mask = u.mask(g.n());
  auto check = [&](const std::vector<Vertex>& xs) -> std::optional<XYWitness> {
    Bitset blocked(g.n());
    for (Vertex x : xs) {
      blocked |= g.neighbors(x);
      blocked.set(x);
    }
    const Bitset rest = u_mask - blocked;
    if (static_cast<int>(rest.count()) < t) return std::nullopt;
    XYWitness wit{xs, {}};
    for (auto y = rest.find_first(); y != Bitset::npos && static_cast<int>(wit.y.size()) < t;
         y = rest.find_next(y)) {
      wit.y.push_back(static_cast<Vertex>(y));
    }
    return wit;
  };

  // Greedy candidate: grow X by the vertex that enlarges X ∪ N(X) least.
  std::vector<Vertex> greedy;
  Bitset blocked(g.n());
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  for (int step = 0; step < t; ++step) {
    int best = -1;
    int best_gain = INT_MAX;
    for (int i = 0; i < m; ++i) {
      if (taken[i]) continue;
      Bitset grown = (g.neighbors(u[i]) & u_mask) - blocked;
      const int gain = static_cast<int>(grown.count()) + (blocked[u[i]] ? 0 : 1);
      if (gain < best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    taken[best] = 1;
    greedy.push_back(u[best]);
    blocked |= g.neighbors(u[best]) & u_mask;
    blocked.set(u[best]);
  }
  if (auto w = check(greedy)) return w;

  std::vector<Vertex> pool = u.ids();
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < t; ++i) std::swap(pool[i], pool[i + rng.below(m - i)]);
    std::vector<Vertex> xs(pool.begin(), pool.begin() + t);
    std::sort(xs.begin(), xs.end());
    if (auto w = check(xs)) return w;
  }
  return std::nullopt;
}

double fine_cycle_bound(int r) { return 400.0 * std::pow(r, 4) * std::log(static_cast<double>(r)); }

}  // namespace

const AuxEdge* AuxiliaryGraph::find(Vertex v, Vertex x, Color c) const {
  if (v > x) std::swap(v, x);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_tuple(c, v, x),
                             [](const AuxEdge& e, const std::tuple<Color, Vertex, Vertex>& key) {
                               return std::make_tuple(e.color, e.v, e.w) < key;
                             });
  if (it == edges.end() || it->color != c || it->v != v || it->w != x) return nullptr;
  return &*it;
}

ColorLayers AuxiliaryGraph::layers() const {
  ColorLayers out;
  out.n = static_cast<int>(w.size());
  out.r = r;
  out.layers.resize(static_cast<std::size_t>(r));
  auto index = [&](Vertex host) {
    return static_cast<Vertex>(std::lower_bound(w.begin(), w.end(), host) - w.begin());
  };
  for (const AuxEdge& e : edges) out.layers[e.color - 1].push_back({index(e.v), index(e.w)});
  return out;
}

SimpleGraph AuxiliaryGraph::underlying() const {
  SimpleGraph out(static_cast<int>(w.size()));
  const ColorLayers l = layers();
  for (const auto& layer : l.layers) {
    for (const Edge& e : layer) out.add_edge(e.u, e.v);
  }
  return out;
}

AuxiliaryGraph build_auxiliary_graph(const ColoredGraph& g, const VertexSet& u, const VertexSet& w,
                                     int t) {
  if (t < 1) throw ParameterError("build_auxiliary_graph: t must be at least 1");
  if (!disjoint(u, w)) throw ParameterError("build_auxiliary_graph: U and W overlap");
  u.check_range(g.n());
  w.check_range(g.n());
  AuxiliaryGraph h;
  h.w = w;
  h.r = g.r();
  h.t = t;
  const Bitset u_mask = u.mask(g.n());
  const std::size_t want = 2 * static_cast<std::size_t>(t);
  for (Color c = 1; c <= g.r(); ++c) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Bitset nv = g.neighbors(w[i], c) & u_mask;
      if (nv.none()) continue;
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        AuxEdge e;
        e.v = w[i];
        e.w = w[j];
        e.color = c;
        const Bitset common = nv & g.neighbors(w[j], c);
        if (common.count() >= want) {
          e.rule = AuxEdge::Rule::Connectors;
          e.connectors = VertexSet::from_mask(common).ids();
          h.edges.push_back(std::move(e));
          continue;
        }
        auto m = path_matching(g, c, w[i], w[j], u_mask, static_cast<int>(want));
        if (m.empty()) continue;
        e.rule = AuxEdge::Rule::Matching;
        e.matching = std::move(m);
        h.edges.push_back(std::move(e));
      }
    }
  }
  return h;
}

FineAbsorbReport fine_absorb(const ColoredGraph& g, const VertexSet& u, const VertexSet& w, int t,
                             int r, const FineAbsorbOptions& options) {
  if (t < 1) throw ParameterError("fine_absorb: t must be at least 1");
  if (r < 1) throw ParameterError("fine_absorb: r must be at least 1");
  if (!disjoint(u, w)) throw ParameterError("fine_absorb: U and W overlap");
  if (static_cast<int>(w.size()) > t) {
    throw ParameterError("fine_absorb: |W| = " + std::to_string(w.size()) + " exceeds t = " +
                         std::to_string(t));
  }
  u.check_range(g.n());
  w.check_range(g.n());

  FineAbsorbReport report;
  report.cycle_bound = fine_cycle_bound(r);
  report.h.w = w;
  report.h.r = g.r();
  report.h.t = t;
  if (w.empty()) return report;

  // (i) for every r-set S ⊆ W: deg*(S, U) ≥ 6 r^{r+1} t.
  const double degree_needed = 6.0 * std::pow(r, r + 1) * t;
  const Bitset u_mask = u.mask(g.n());
  for_each_kset_colex(w.ids(), r, [&](const std::vector<Vertex>& s) {
    Bitset common = u_mask;
    for (Vertex v : s) common &= g.neighbors(v);
    const auto deg = common.count();
    if (static_cast<double>(deg) < degree_needed) {
      report.degree_condition = false;
      report.violations.push_back("(i) fails for S = " + format_set(s) + ": deg*(S,U) = " +
                                  std::to_string(deg) + " < " + std::to_string(degree_needed));
      return false;
    }
    return true;
  });

  // (ii) for disjoint X, Y ⊆ U with |X|, |Y| ≥ t: e(X, Y) > 0.
  std::optional<XYWitness> xy;
  if (static_cast<int>(u.size()) <= options.exact_xy_limit) {
    report.xy_exact = true;
    xy = xy_witness_exact(g, u, t);
  } else {
    Rng rng = Rng::stream(options.seed, 0, "fine-absorb-xy");
    xy = xy_witness_sampled(g, u, t, options.xy_samples, rng);
  }
  if (xy) {
    report.xy_condition = false;
    report.violations.push_back("(ii) fails for X = " + format_set(xy->x) + ", Y = " +
                                format_set(xy->y) + ": e(X,Y) = 0");
  }
  if (options.check_preconditions && !report.violations.empty()) {
    throw ParameterError("fine_absorb: " + report.violations.front());
  }

  report.h = build_auxiliary_graph(g, u, w, t);
  if (w.size() <= 64) report.independence = independence_number(report.h.underlying());

  const ColorLayers layers = report.h.layers();
  PartitionResult parts;
  if (static_cast<int>(w.size()) <= std::min(options.budget.max_vertices, 20)) {
    parts = min_mono_cycle_partition(layers, options.budget);
  } else {
    report.h_partition_exact = false;
    parts = chunked_mono_cycle_partition(layers, options.budget);
  }
  report.h_cycles = parts.count;

  // Greedy expansion along each H-cycle; every host vertex is used at most once.
  std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : w) used[v] = 1;
  for (const Cycle& f : parts.cover.cycles) {
    if (f.vertices.size() == 1) {
      report.cover.cycles.push_back(vertex_cycle(w[f.vertices[0]]));
      continue;
    }
    const std::size_t k = f.vertices.size();
    Cycle host;
    host.color = f.color;
    host.vertices.push_back(w[f.vertices[0]]);
    for (std::size_t i = 0; i < k; ++i) {
      const Vertex a = w[f.vertices[i]];
      const Vertex b = w[f.vertices[(i + 1) % k]];
      const AuxEdge* e = report.h.find(a, b, f.color);
      if (e == nullptr) throw std::logic_error("fine_absorb: H-cycle uses a missing edge");
      bool extended = false;
      if (e->rule == AuxEdge::Rule::Connectors) {
        for (Vertex c : e->connectors) {
          if (used[c]) continue;
          used[c] = 1;
          host.vertices.push_back(c);
          extended = true;
          break;
        }
      } else {
        for (const Edge& me : e->matching) {
          if (used[me.u] || used[me.v]) continue;
          used[me.u] = used[me.v] = 1;
          if (a == e->v) {
            host.vertices.push_back(me.u);
            host.vertices.push_back(me.v);
          } else {
            host.vertices.push_back(me.v);
            host.vertices.push_back(me.u);
          }
          extended = true;
          break;
        }
      }
      if (!extended) {
        throw InfeasibleError("fine_absorb: witness exhausted for H-edge " + std::to_string(a) +
                              "-" + std::to_string(b) + " of colour " + std::to_string(f.color));
      }
      if (i + 1 < k) host.vertices.push_back(b);
      if (host.vertices.size() > 3 * (i + 2)) {
        throw std::logic_error("fine_absorb: expanded path longer than 3 per H-vertex");
      }
    }
    report.cover.cycles.push_back(std::move(host));
  }

  const VertexSet allowed = set_union(u, w);
  const VertexSet forbidden = set_difference(VertexSet::range(g.n()), allowed);
  const VerificationReport check = verify_cover(g, report.cover, w, forbidden);
  if (!check.valid) {
    throw std::logic_error("fine_absorb produced an invalid cover: " +
                           check.violations.front().detail);
  }
  return report;
}

ApproxCoverResult approx_cover(const ColoredGraph& g, const VertexSet& u, const VertexSet& w,
                               double beta, double p, int r) {
  if (!disjoint(u, w)) throw ParameterError("approx_cover: U and W overlap");
  if (!(beta > 0.0)) throw ParameterError("approx_cover: beta must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("approx_cover: p must lie in (0,1]");
  if (r < 1) throw ParameterError("approx_cover: r must be at least 1");
  u.check_range(g.n());
  w.check_range(g.n());

  ApproxCoverResult result;
  result.cycle_budget = 3 * r * r;
  result.leftover_target = 4000.0 * std::pow(r, 4) / beta / p;

  Bitset free_u = u.mask(g.n());
  std::vector<char> uncovered(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : w) uncovered[v] = 1;
  std::size_t remaining = w.size();

  auto grow = [&](Color c) {
    Cycle best;
    Vertex start = -1;
    int start_deg = -1;
    for (Vertex v : w) {
      if (!uncovered[v]) continue;
      const int d = intersect_count(g.neighbors(v, c), free_u);
      if (d > start_deg) {
        start_deg = d;
        start = v;
      }
    }
    std::vector<Vertex> path{start};
    std::vector<char> in_path(static_cast<std::size_t>(g.n()), 0);
    in_path[start] = 1;
    Bitset local_free = free_u;
    while (true) {
      const Bitset options = g.neighbors(path.back(), c) & local_free;
      bool extended = false;
      for (auto x = options.find_first(); x != Bitset::npos && !extended;
           x = options.find_next(x)) {
        for (Vertex next : w) {
          if (!uncovered[next] || in_path[next] || g.color(static_cast<Vertex>(x), next) != c) {
            continue;
          }
          path.push_back(static_cast<Vertex>(x));
          path.push_back(next);
          in_path[next] = 1;
          local_free.reset(x);
          extended = true;
          break;
        }
      }
      if (!extended) break;
    }
    // Close the longest prefix that admits a closing vertex or edge.
    while (path.size() >= 3) {
      const Vertex last = path.back();
      if (path.size() >= 3 && g.color(last, path.front()) == c) {
        best = Cycle{c, path};
        return best;
      }
      const Bitset closers = g.neighbors(last, c) & g.neighbors(path.front(), c) & local_free;
      const auto x = closers.find_first();
      if (x != Bitset::npos) {
        best = Cycle{c, path};
        best.vertices.push_back(static_cast<Vertex>(x));
        return best;
      }
      local_free.set(path[path.size() - 2]);
      path.pop_back();
      path.pop_back();
    }
    return vertex_cycle(start);
  };

  while (remaining > 0 && static_cast<int>(result.cover.size()) < result.cycle_budget) {
    Cycle chosen;
    std::size_t chosen_w = 0;
    for (Color c = 1; c <= g.r(); ++c) {
      Cycle cand = grow(c);
      std::size_t in_w = 0;
      for (Vertex v : cand.vertices) in_w += uncovered[v] ? 1 : 0;
      if (in_w > chosen_w) {
        chosen_w = in_w;
        chosen = std::move(cand);
      }
    }
    for (Vertex v : chosen.vertices) {
      if (uncovered[v]) {
        uncovered[v] = 0;
        --remaining;
      } else {
        free_u.reset(v);
      }
    }
    result.cover.cycles.push_back(std::move(chosen));
  }
  std::vector<Vertex> left;
  for (Vertex v : w) {
    if (uncovered[v]) left.push_back(v);
  }
  result.leftover = VertexSet(std::move(left));
  return result;
}

double AbsorptionParams::K() const { return 24.0 * std::pow(r, 9) / beta; }
double AbsorptionParams::t1() const { return K() / std::pow(p, r); }
double AbsorptionParams::t2() const { return 16000.0 * std::pow(r, 4) / (beta * p); }

void AbsorptionParams::validate() const {
  if (r < 1) throw ParameterError("absorption: r must be at least 1");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("absorption: beta must lie in (0,1)");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("absorption: p must lie in (0,1]");
}

namespace {

int stage_t(double literal, std::size_t w_size, bool strict) {
  const int fitted = std::max<int>(2, static_cast<int>(w_size));
  if (!strict) return fitted;
  return std::max(fitted, static_cast<int>(std::min(std::ceil(literal), 1e9)));
}

// Counts (c₁)/(c₂) violations of a split of U' for the k-sets of `ws`.
int split_violations(const ColoredGraph& g, const VertexSet& u_prime, const VertexSet& u2,
                     const VertexSet& u3, const VertexSet& ws, int r) {
  const double shrink = 1.0 - 1.0 / std::pow(r, 4);
  int bad = 0;
  const double half = shrink * static_cast<double>(u_prime.size()) / 2.0;
  if (static_cast<double>(u2.size()) < half) ++bad;
  if (static_cast<double>(u3.size()) < half) ++bad;
  const Bitset up = u_prime.mask(g.n());
  const Bitset m2 = u2.mask(g.n());
  const Bitset m3 = u3.mask(g.n());
  std::vector<int> ks{1};
  if (r > 1) ks.push_back(r);
  for (int k : ks) {
    for_each_kset_colex(ws.ids(), k, [&](const std::vector<Vertex>& s) {
      Bitset common = up;
      for (Vertex v : s) common &= g.neighbors(v);
      const double need = shrink * static_cast<double>(common.count()) / 2.0;
      if (static_cast<double>(intersect_count(common, m2)) < need) ++bad;
      if (static_cast<double>(intersect_count(common, m3)) < need) ++bad;
      return true;
    });
  }
  return bad;
}

}  // namespace

AbsorbReport absorb_pipeline(const ColoredGraph& g, const VertexSet& u, const VertexSet& w,
                             const AbsorptionParams& params, const AbsorbOptions& options) {
  params.validate();
  if (!disjoint(u, w)) throw ParameterError("absorb_pipeline: U and W overlap");
  u.check_range(g.n());
  w.check_range(g.n());
  const int r = params.r;

  AbsorbReport report;
  report.count_bound = 900.0 * std::pow(r, 4) * std::log(static_cast<double>(r));
  report.spill_bound = 48.0 * std::pow(r, 9) / (params.beta * std::pow(params.p, r));
  if (w.empty()) return report;

  FineAbsorbOptions fine;
  fine.check_preconditions = options.strict;
  fine.budget = options.budget;
  fine.seed = options.seed;

  // Stage 1: deviant vertices of W.
  const double alpha = 1.0 / std::pow(r, 4);
  VertexSet bad;
  if (!u.empty()) {
    std::vector<int> ks{1};
    if (r > 1) ks.push_back(r);
    for (int k : ks) {
      if (static_cast<int>(w.size()) < k) continue;
      bad = set_union(bad, find_bad_set(g, u, k, alpha, params.p, w).y);
    }
  } else {
    bad = w;
  }
  report.w1 = set_intersection(w, bad);
  CycleCover c1;
  if (!report.w1.empty()) {
    report.t_used[0] = stage_t(params.t1(), report.w1.size(), options.strict);
    const VertexSet rest = set_difference(VertexSet::range(g.n()), report.w1);
    try {
      FineAbsorbReport f = fine_absorb(g, rest, report.w1, report.t_used[0], r, fine);
      for (const auto& v : f.violations) report.notes.push_back("stage 1 " + v);
      c1 = std::move(f.cover);
    } catch (const ParameterError& e) {
      throw StageError("absorb.stage1", e.what());
    } catch (const InfeasibleError& e) {
      throw StageError("absorb.stage1", e.what());
    }
  }
  report.stage_cycles[0] = c1.size();
  const VertexSet v1 = c1.covered();
  report.w2 = set_difference(w, v1);
  const VertexSet u_prime = set_difference(u, v1);

  // Stage 2: random halving of U' until (c₁), (c₂) hold.
  const VertexSet w_rest = set_difference(w, report.w1);
  int best_bad = INT_MAX;
  for (int attempt = 0; attempt < std::max(1, options.split_retries); ++attempt) {
    Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(attempt), "absorb-split");
    std::vector<Vertex> a, b;
    for (Vertex x : u_prime) (rng.bernoulli(0.5) ? a : b).push_back(x);
    VertexSet u2(std::move(a)), u3(std::move(b));
    const int bad_count = split_violations(g, u_prime, u2, u3, w_rest, r);
    report.split_attempts = attempt + 1;
    if (bad_count < best_bad) {
      best_bad = bad_count;
      report.u2 = std::move(u2);
      report.u3 = std::move(u3);
    }
    if (bad_count == 0) break;
  }
  report.split_violations = best_bad;
  if (best_bad > 0) {
    if (options.strict) {
      throw StageError("absorb.split", "no split satisfied (c1),(c2) within " +
                                           std::to_string(report.split_attempts) + " attempts");
    }
    report.notes.push_back("split kept with " + std::to_string(best_bad) +
                           " (c1)/(c2) violations");
  }

  ApproxCoverResult approx =
      approx_cover(g, report.u2, report.w2, params.beta / 4.0, params.p, r);
  report.stage_cycles[1] = approx.cover.size();
  report.stage2_leftover = approx.leftover.size();
  report.stage2_target = approx.leftover_target;
  report.w3 = approx.leftover;

  // Stage 3: the leftover of stage 2.
  CycleCover c3;
  if (!report.w3.empty()) {
    report.t_used[1] = stage_t(params.t2(), report.w3.size(), options.strict);
    try {
      FineAbsorbReport f = fine_absorb(g, report.u3, report.w3, report.t_used[1], r, fine);
      for (const auto& v : f.violations) report.notes.push_back("stage 3 " + v);
      c3 = std::move(f.cover);
    } catch (const ParameterError& e) {
      throw StageError("absorb.stage3", e.what());
    } catch (const InfeasibleError& e) {
      throw StageError("absorb.stage3", e.what());
    }
  }
  report.stage_cycles[2] = c3.size();

  report.cover = std::move(c1);
  report.cover.append(approx.cover);
  report.cover.append(c3);
  const VertexSet covered = report.cover.covered();
  report.spill = set_difference(covered, set_union(u, w)).size();
  const VerificationReport check = verify_cover(g, report.cover, w, {});
  if (!check.valid) {
    throw std::logic_error("absorb_pipeline produced an invalid cover: " +
                           check.violations.front().detail);
  }
  return report;
}

}  // namespace mcp
