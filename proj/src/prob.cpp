#include "mcp/prob.hpp"

#include <cmath>
#include <string>

#include "mcp/errors.hpp"

namespace mcp {

void DensityParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("beta must lie in (0,1)");
  if (k < 1) throw ParameterError("k must be at least 1");
}

double chernoff_bound(long long n, double p, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.5)) throw ParameterError("chernoff_bound: alpha must lie in (0, 3/2)");
  if (n < 0) throw ParameterError("chernoff_bound: n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("chernoff_bound: p must lie in [0,1]");
  return 2.0 * std::exp(-alpha * alpha * static_cast<double>(n) * p / 3.0);
}

PairDensityReport check_pair_density(const ColoredGraph& g, const VertexSet& x, const VertexSet& y,
                                     double p, double alpha) {
  if (x.empty() || y.empty()) throw ParameterError("check_pair_density: X and Y must be nonempty");
  if (!disjoint(x, y)) throw ParameterError("check_pair_density: X and Y overlap");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("check_pair_density: p must lie in (0,1]");
  x.check_range(g.n());
  y.check_range(g.n());
  PairDensityReport report;
  report.alpha = alpha;
  report.edges = g.view().edges_between(x, y.mask(g.n()));
  report.measured = static_cast<double>(report.edges) /
                    (p * static_cast<double>(x.size()) * static_cast<double>(y.size()));
  report.pass = report.measured >= 1.0 - alpha && report.measured <= 1.0 + alpha;
  return report;
}

TripleSumReport check_triple_sums(const ColoredGraph& g, const std::vector<Edge>& pairs,
                                  const VertexSet& y, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("check_triple_sums: p must lie in (0,1]");
  y.check_range(g.n());
  const std::size_t ell = pairs.size();
  if (y.size() != 3 * ell) throw ParameterError("check_triple_sums: |Y| must equal 3|L|");
  std::vector<Vertex> members;
  for (const Edge& e : pairs) {
    if (e.u == e.v) throw ParameterError("check_triple_sums: degenerate pair");
    members.push_back(e.u);
    members.push_back(e.v);
  }
  const VertexSet pair_vertices(members);  // throws on overlap between pairs
  pair_vertices.check_range(g.n());
  if (!disjoint(pair_vertices, y)) throw ParameterError("check_triple_sums: Y meets a pair");

  TripleSumReport report;
  const Bitset y_mask = y.mask(g.n());
  for (const Edge& e : pairs) {
    Bitset common = g.neighbors(e.u) & g.neighbors(e.v);
    report.sum += intersect_count(common, y_mask);
  }
  const double log_n = std::log(static_cast<double>(g.n()));
  const double l = static_cast<double>(ell);
  report.sparse_regime = l <= 6.0 * log_n / (p * p);
  report.threshold = report.sparse_regime ? 72.0 * l * log_n : 6.0 * l * l * p * p;
  report.pass = static_cast<double>(report.sum) <= report.threshold;
  return report;
}

BadSetResult find_bad_set(const ColoredGraph& g, const VertexSet& x, int k, double alpha, double p,
                          const std::optional<VertexSet>& ground) {
  if (x.empty()) throw ParameterError("find_bad_set: X must be nonempty");
  if (k < 1) throw ParameterError("find_bad_set: k must be at least 1");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("find_bad_set: p must lie in (0,1]");
  x.check_range(g.n());
  const VertexSet outside =
      ground ? set_difference(*ground, x) : set_difference(VertexSet::range(g.n()), x);
  if (!ground && static_cast<int>(outside.size()) < k) {
    throw ParameterError("find_bad_set: complement of X has fewer than k vertices");
  }
  outside.check_range(g.n());

  const double expected = std::pow(p, k) * static_cast<double>(x.size());
  const double low = (1.0 - alpha) * expected;
  const double high = (1.0 + alpha) * expected;
  const Bitset x_mask = x.mask(g.n());

  BadSetResult result;
  const double beta = static_cast<double>(x.size()) / g.n();
  result.size_bound = 12.0 * k / (alpha * alpha * beta) / std::pow(p, k);

  // Separate used-sets: each matching is maximal in its own hypergraph.
  std::vector<char> used_low(static_cast<std::size_t>(g.n()), 0);
  std::vector<char> used_high(static_cast<std::size_t>(g.n()), 0);
  Bitset common(g.n());
  for_each_kset_colex(outside.ids(), k, [&](const std::vector<Vertex>& s) {
    bool free_low = true;
    bool free_high = true;
    for (Vertex v : s) {
      free_low = free_low && !used_low[v];
      free_high = free_high && !used_high[v];
    }
    if (!free_low && !free_high) return true;
    ++result.ksets_scanned;
    common = x_mask;
    for (Vertex v : s) common &= g.neighbors(v);
    const double degree = static_cast<double>(common.count());
    if (free_low && degree < low) {
      for (Vertex v : s) used_low[v] = 1;
      result.low_matching.emplace_back(s);
    } else if (free_high && degree > high) {
      for (Vertex v : s) used_high[v] = 1;
      result.high_matching.emplace_back(s);
    }
    return true;
  });

  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (used_low[v] || used_high[v]) members.push_back(v);
  }
  result.y = VertexSet(std::move(members));
  return result;
}

}  // namespace mcp
