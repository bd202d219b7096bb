// One line per acceptance criterion; exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mcp/absorption.hpp"
#include "mcp/errors.hpp"
#include "mcp/exact.hpp"
#include "mcp/pipeline.hpp"
#include "mcp/prob.hpp"
#include "mcp/reduced.hpp"
#include "mcp/regularity.hpp"
#include "oracles.hpp"

using namespace mcp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

VertexSet block(Vertex from, Vertex to) {
  std::vector<Vertex> ids;
  for (Vertex v = from; v < to; ++v) ids.push_back(v);
  return VertexSet(std::move(ids));
}

// Partition check that uses nothing but colour lookups.
bool is_partition(const ColoredGraph& g, const CycleCover& cover) {
  std::vector<int> hit(static_cast<std::size_t>(g.n()), 0);
  for (const auto& c : cover.cycles) {
    const auto& vs = c.vertices;
    for (Vertex v : vs) {
      if (v < 0 || v >= g.n() || hit[v]++) return false;
    }
    if (vs.size() == 2 && !g.adjacent(vs[0], vs[1])) return false;
    if (vs.size() >= 3) {
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (g.color(vs[i], vs[(i + 1) % vs.size()]) != c.color) return false;
      }
    }
  }
  return std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
}

// Degrees and monochromatic components recomputed by plain loops.
int min_degree_loop(const ColoredGraph& g) {
  int best = g.n();
  for (Vertex u = 0; u < g.n(); ++u) {
    int d = 0;
    for (Vertex v = 0; v < g.n(); ++v) d += g.adjacent(u, v);
    best = std::min(best, d);
  }
  return best;
}

std::vector<std::vector<Vertex>> mono_components(const ColoredGraph& g) {
  std::vector<std::vector<Vertex>> out;
  for (Color c = 1; c <= g.r(); ++c) {
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    for (Vertex s = 0; s < g.n(); ++s) {
      if (seen[s]) continue;
      std::vector<Vertex> comp{s}, stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v = 0; v < g.n(); ++v) {
          if (!seen[v] && g.color(u, v) == c) {
            seen[v] = 1;
            comp.push_back(v);
            stack.push_back(v);
          }
        }
      }
      if (comp.size() > 1) out.push_back(std::move(comp));
    }
  }
  return out;
}

Outcome bessy_thomasse() {
  Outcome o;
  long long total = 0;
  int worst = 0;
  for (int n = 4; n <= 6; ++n) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    const int m = static_cast<int>(pairs.size());
    // Edge 0 keeps colour 1: swapping colours preserves the optimum.
    for (long long mask = 0; mask < (1LL << (m - 1)); ++mask) {
      GraphBuilder b(n, 2);
      for (int i = 0; i < m; ++i) {
        const Color c = i == 0 ? 1 : static_cast<Color>(1 + (mask >> (i - 1) & 1));
        b.add_edge(pairs[i].first, pairs[i].second, c);
      }
      const auto g = std::move(b).build();
      const auto res = min_mono_cycle_partition(g);
      ++total;
      worst = std::max(worst, res.count);
      if (res.count > 2 || !is_partition(g, res.cover)) o.pass = false;
    }
  }
  o.detail = fmt("%lld colourings of K_4..K_6, worst optimum %d", total, worst);
  return o;
}

Outcome solver_oracle() {
  Outcome o;
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int r = 2 + static_cast<int>(seed % 2);
    const double p = seed / 2 % 2 == 0 ? 0.3 : 0.6;
    const int n = 2 + static_cast<int>(seed % 7);
    const auto g = color_edges(sample_gnp(n, p, 1000 + seed), r, ColoringStrategy::UniformRandom, seed);
    const auto res = min_mono_cycle_partition(g);
    if (res.count == oracle::min_cycle_partition(g) && is_partition(g, res.cover)) ++agree;
  }
  o.pass = agree == 200;
  o.detail = fmt("%d/200 graphs agree with the set-partition enumerator", agree);
  return o;
}

// G[U] complete and every W–U pair present. Colours are uniform, except that
// with `loyal` each W-vertex meets U in one colour of its own, which leaves
// H a disjoint union of cliques.
ColoredGraph absorber_host(int u_size, int w_size, int r, bool loyal, Rng& rng) {
  GraphBuilder b(u_size + w_size, r);
  std::vector<Color> own;
  for (int i = 0; i < w_size; ++i) own.push_back(1 + static_cast<Color>(rng.below(static_cast<std::uint64_t>(r))));
  for (Vertex x = 0; x < u_size; ++x) {
    for (Vertex y = x + 1; y < u_size + w_size; ++y) {
      const Color c = loyal && y >= u_size ? own[y - u_size]
                                            : 1 + static_cast<Color>(rng.below(static_cast<std::uint64_t>(r)));
      b.add_edge(x, y, c);
    }
  }
  return std::move(b).build();
}

Outcome fine_absorb_suite() {
  Outcome o;
  int good = 0;
  int max_alpha[4] = {0, 0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    Rng rng = Rng::stream(7, static_cast<std::uint64_t>(i), "fine-suite");
    const int r = i < 50 ? 2 : 3;
    const int w_size = 1 + static_cast<int>(rng.below(8));
    const int t_cap = r == 2 ? 12 : 8;
    const int t = w_size + static_cast<int>(rng.below(static_cast<std::uint64_t>(t_cap - w_size + 1)));
    const int u_size = 6 * static_cast<int>(std::pow(r, r + 1)) * t;
    const auto g = absorber_host(u_size, w_size, r, i % 2 == 1, rng);
    const auto u = block(0, u_size);
    const auto w = block(u_size, u_size + w_size);
    FineAbsorbOptions opts;
    opts.seed = static_cast<std::uint64_t>(i);
    try {
      const auto rep = fine_absorb(g, u, w, t, r, opts);
      const auto h_edges = rep.h.underlying().edges();
      const int alpha = oracle::independence_number(w_size, h_edges);
      max_alpha[r] = std::max(max_alpha[r], alpha);
      bool ok = verify_cover(g, rep.cover, w, {}).valid;
      std::vector<int> hit(static_cast<std::size_t>(g.n()), 0);
      for (const auto& c : rep.cover.cycles) {
        for (Vertex v : c.vertices) ok = ok && v < u_size + w_size && hit[v]++ == 0;
      }
      for (Vertex v : w) ok = ok && hit[v] == 1;
      ok = ok && rep.cover.covered().size() <= 3 * w.size();
      ok = ok && static_cast<double>(rep.cover.size()) <= 400.0 * std::pow(r, 4) * std::log(r);
      ok = ok && alpha <= 2 * r - 1 && alpha == rep.independence;
      ok = ok && rep.degree_condition && rep.xy_condition;
      good += ok;
    } catch (const std::exception& e) {
      o.detail = e.what();
    }
  }
  o.pass = good == 100;
  o.detail = fmt("%d/100 instances; largest alpha(H) %d for r=2, %d for r=3", good, max_alpha[2],
                 max_alpha[3]) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

ColoredGraph adversarial(int kind, const VertexSet& x, std::uint64_t seed) {
  const int n = 300;
  Rng rng = Rng::stream(seed, 0, "adversarial");
  GraphBuilder b(n, 1);
  const auto base = sample_gnp(n, 0.3, seed);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const bool ux = x.contains(u);
      const bool vx = x.contains(v);
      const Vertex out = ux ? v : u;
      bool edge = base.adjacent(u, v);
      if (ux != vx) {
        switch (kind) {
          case 0: edge = edge && out % 10 != 0; break;   // a tenth see nothing of X
          case 1: edge = edge || out % 7 == 0; break;    // a seventh see all of X
          case 2: edge = (u + v) % 2 == 0; break;        // parity halves of X
          case 3: edge = rng.bernoulli(out % 3 == 0 ? 0.6 : 0.3); break;
          default: edge = out % 2 == 0 && edge; break;   // every other vertex starved
        }
      }
      if (edge) b.add_edge(u, v, 1);
    }
  }
  return std::move(b).build();
}

Outcome bad_set_postcondition() {
  Outcome o;
  int runs = 0;
  int clean = 0;
  std::size_t largest = 0;
  auto check = [&](const ColoredGraph& g, const VertexSet& x) {
    for (int k : {1, 2}) {
      const auto res = find_bad_set(g, x, k, 0.5, 0.3);
      largest = std::max(largest, res.y.size());
      ++runs;
      clean += oracle::deviant_ksets(g, x, res.y, k, 0.5, 0.3) == 0 && disjoint(res.y, x);
    }
  };
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng = Rng::stream(seed, 0, "bad-set-x");
    std::vector<Vertex> ids = VertexSet::range(300).ids();
    rng.shuffle(ids);
    const VertexSet x(std::vector<Vertex>(ids.begin(), ids.begin() + 100));
    check(seed < 50 ? sample_gnp(300, 0.3, 500 + seed) : adversarial(static_cast<int>(seed % 5), x, seed), x);
  }
  o.pass = clean == runs;
  o.detail = fmt("%d/%d scans clean (50 random, 10 adversarial, k=1,2); largest Y %zu", clean, runs,
                 largest);
  return o;
}

Outcome component_choice() {
  Outcome o;
  int good = 0;
  std::size_t most = 0;
  int lowest = 40;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int t = 40;
    const int r = 2 + static_cast<int>(seed % 2);
    Rng rng = Rng::stream(seed, 0, "components");
    // Half the instances make the last colour rare, so small components appear.
    const double rare = seed % 4 < 2 ? 0.03 : 1.0 / r;
    std::vector<int> lost(t, 0);
    GraphBuilder b(t, r);
    for (Vertex u = 0; u < t; ++u) {
      for (Vertex v = u + 1; v < t; ++v) {
        if (lost[u] < 3 && lost[v] < 3 && rng.bernoulli(0.06)) {
          ++lost[u];
          ++lost[v];
          continue;
        }
        Color c = static_cast<Color>(r);
        if (!rng.bernoulli(rare)) c = 1 + static_cast<Color>(rng.below(static_cast<std::uint64_t>(r - 1)));
        b.add_edge(u, v, c);
      }
    }
    const auto g = std::move(b).build();
    if (min_degree_loop(g) < 36) {
      o.detail = "generator broke the degree condition";
      continue;
    }
    const auto red = choose_components(g, 0.9, 0.25);
    const auto comps = mono_components(red.graph());
    bool ok = static_cast<double>(comps.size()) <= r * r / 0.25;
    const int delta = min_degree_loop(red.graph());
    ok = ok && delta >= 26;
    for (const auto& e : red.graph().edges()) ok = ok && g.color(e.u, e.v) == e.color;
    // Exactly the components with at least γt/r vertices survive.
    std::size_t big = 0;
    for (const auto& c : mono_components(g)) big += static_cast<double>(c.size()) >= 0.25 * t / r;
    ok = ok && big == comps.size();
    most = std::max(most, comps.size());
    lowest = std::min(lowest, delta);
    good += ok;
  }
  o.pass = good == 100;
  o.detail = fmt("%d/100 graphs; most components %zu, smallest delta(R) %d", good, most, lowest) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome allocation() {
  Outcome o;
  int good = 0;
  long long biggest = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::stream(seed, 0, "allocation");
    const int t = 4 + 2 * static_cast<int>(rng.below(4));
    const int r = 2 + static_cast<int>(rng.below(2));
    ReducedGraph red;
    while (true) {
      GraphBuilder b(t, r);
      std::vector<int> lost(t, 0);
      // Each vertex may lose edges down to degree ⌈2t/3⌉.
      const int allowed = t - 1 - (2 * t + 2) / 3;
      for (Vertex u = 0; u < t; ++u) {
        for (Vertex v = u + 1; v < t; ++v) {
          if (lost[u] < allowed && lost[v] < allowed && rng.bernoulli(0.15)) {
            ++lost[u];
            ++lost[v];
            continue;
          }
          b.add_edge(u, v, 1 + static_cast<Color>(rng.below(static_cast<std::uint64_t>(r))));
        }
      }
      ReducedGraph cand(std::move(b).build());
      if (cand.components().size() > 4) continue;
      try {
        red = cand.with_matching(perfect_matching(cand));
        break;
      } catch (const InfeasibleError&) {
      }
    }
    const long long s = static_cast<long long>(red.components().size());
    const long long m = 90LL * t * t * t * s;
    std::vector<long long> x;
    for (int i = 0; i < t; ++i) x.push_back(m + static_cast<long long>(rng.below(static_cast<std::uint64_t>(m / 9 + 1))));
    biggest = std::max(biggest, std::accumulate(x.begin(), x.end(), 0LL));
    try {
      const auto res = allocate_cycles(red, x, m);
      const auto defects = oracle::allocation_defects(red, x, m, res);
      if (defects.empty() && verify_allocation(red, x, m, res).valid) {
        ++good;
      } else if (o.detail.empty() && !defects.empty()) {
        o.detail = defects.front();
      }
    } catch (const std::exception& e) {
      if (o.detail.empty()) o.detail = e.what();
    }
  }
  o.pass = good == 100;
  o.detail = fmt("%d/100 instances; largest blueprint %lld vertices", good, biggest) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome slicing() {
  Outcome o;
  const double eps = 0.4;
  const double d = 0.8;
  int certified = 0;
  int good = 0;
  int cross_checked = 0;
  for (std::uint64_t seed = 0; certified < 200 && seed < 5000; ++seed) {
    Rng rng = Rng::stream(seed, 0, "slicing");
    const int na = 6 + static_cast<int>(rng.below(7));
    const int nb = 6 + static_cast<int>(rng.below(7));
    const double q = rng.bernoulli(0.5) ? 0.8 : 0.9;
    GraphBuilder b(na + nb, 1);
    for (Vertex u = 0; u < na; ++u) {
      for (Vertex v = na; v < na + nb; ++v) {
        if (rng.bernoulli(q)) b.add_edge(u, v, 1);
      }
    }
    const auto g = std::move(b).build();
    const auto a = block(0, na);
    const auto bb = block(na, na + nb);
    if (!is_regular_pair(g.view(), q, a, bb, eps, d).certified()) continue;
    ++certified;
    bool ok = true;
    if (na + nb <= 18) {
      ++cross_checked;
      ok = oracle::regular_by_enumeration(g, 1, q, a, bb, eps, d);
    }
    for (double alpha : {0.5, 2.0 / 3.0}) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<Vertex> pa = a.ids(), pb = bb.ids();
        rng.shuffle(pa);
        rng.shuffle(pb);
        const int ka = static_cast<int>(std::ceil(alpha * na - 1e-9));
        const int kb = static_cast<int>(std::ceil(alpha * nb - 1e-9));
        const VertexSet sa(std::vector<Vertex>(pa.begin(), pa.begin() + ka));
        const VertexSet sb(std::vector<Vertex>(pb.begin(), pb.begin() + kb));
        ok = ok && is_regular_pair(g.view(), q, sa, sb, eps / alpha, d).certified();
      }
    }
    auto low = [&](const VertexSet& side, const VertexSet& other) {
      int count = 0;
      for (Vertex u : side) {
        int deg = 0;
        for (Vertex v : other) deg += g.adjacent(u, v);
        count += deg < (d - eps) * q * static_cast<double>(other.size());
      }
      return count;
    };
    ok = ok && low(a, bb) <= eps * na && low(bb, a) <= eps * nb;
    good += ok;
  }
  o.pass = certified == 200 && good == 200;
  o.detail = fmt("%d/%d certified pairs (eps=%.1f, d=%.1f), %d cross-checked by enumeration", good,
                 certified, eps, d, cross_checked);
  return o;
}

Outcome pair_density() {
  Outcome o;
  const auto g = sample_gnp(2000, 0.1, 2024);
  int pass = 0;
  int recount_ok = 0;
  double lo = 9.0;
  double hi = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = Rng::stream(seed, 0, "pair-density");
    std::vector<Vertex> ids = VertexSet::range(2000).ids();
    rng.shuffle(ids);
    const VertexSet x(std::vector<Vertex>(ids.begin(), ids.begin() + 200));
    const VertexSet y(std::vector<Vertex>(ids.begin() + 200, ids.begin() + 400));
    const auto rep = check_pair_density(g, x, y, 0.1, 0.5);
    long long e = 0;
    for (Vertex u : x) {
      for (Vertex v : y) e += g.adjacent(u, v);
    }
    recount_ok += e == rep.edges;
    const double measured = static_cast<double>(e) / (0.1 * 200 * 200);
    lo = std::min(lo, measured);
    hi = std::max(hi, measured);
    pass += rep.pass && measured >= 0.5 && measured <= 1.5;
  }
  DensityParams params;
  params.alpha = 0.5;
  const double need = params.D() * std::log(2000.0) / 0.1;
  o.pass = pass >= 99 && recount_ok == 100;
  o.detail = fmt("%d/100 pairs pass, p-density in [%.3f, %.3f]; D log n/p = %.0f exceeds |X| = 200",
                 pass, lo, hi, need);
  return o;
}

Outcome end_to_end() {
  Outcome o;
  const double bound = 1000.0 * 16.0 * std::log(2.0);
  std::ostringstream out;
  bool all_valid = true;
  int invalid_failures = 0;
  for (int n : {500, 1000, 1500}) {
    int ok = 0;
    int fails = 0;
    std::size_t lo = SIZE_MAX;
    std::size_t hi = 0;
    std::map<std::string, int> stages;
    for (std::uint64_t run = 0; run < 50; ++run) {
      const std::uint64_t seed = 100000ULL * static_cast<std::uint64_t>(n) + run;
      const auto g = color_edges(sample_gnp(n, 0.3, seed), 2, ColoringStrategy::UniformRandom, seed + 1);
      PipelineParams params;
      params.seed = seed;
      try {
        const auto res = full_partition(g, 2, params);
        const bool valid = is_partition(g, res.cover) && res.cover.size() <= bound;
        all_valid = all_valid && valid;
        ok += valid;
        lo = std::min(lo, res.cover.size());
        hi = std::max(hi, res.cover.size());
      } catch (const StageError& e) {
        ++fails;
        ++stages[e.stage()];
      } catch (const std::exception&) {
        ++invalid_failures;
      }
    }
    out << " n=" << n << ": " << ok << "/50 succeed";
    if (ok > 0) out << " (" << lo << "-" << hi << " cycles)";
    for (const auto& [stage, count] : stages) out << ", " << count << " stop at " << stage;
    out << ";";
  }
  o.pass = all_valid && invalid_failures == 0;
  o.detail = "every returned cover valid and within the bound;" + out.str();
  if (invalid_failures) o.detail += fmt(" %d unstructured failures", invalid_failures);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments pick criteria by number.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"two colours never need more than two cycles on K_4..K_6", bessy_thomasse},
      {"exact solver matches the exhaustive enumerator", solver_oracle},
      {"fine absorption postconditions", fine_absorb_suite},
      {"no deviant k-set outside X and Y", bad_set_postcondition},
      {"component choice keeps few components and high degree", component_choice},
      {"cycle allocation postconditions", allocation},
      {"slices and low-degree vertices of regular pairs", slicing},
      {"pair density in G(2000, 0.1)", pair_density},
      {"end-to-end partitions of G(n, 0.3)", end_to_end},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), static_cast<int>(i + 1)) == only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
