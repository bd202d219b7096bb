#pragma once

#include <optional>
#include <vector>

#include "mcp/graph.hpp"

namespace mcp {

/// Tolerance/proportion knobs of the density lemmas. Derived constants are
/// computed on demand, never cached.
struct DensityParams {
  double alpha = 0.5;
  double beta = 0.5;
  int k = 1;

  double C() const { return 6.0 / (alpha * alpha * beta); }
  double D() const { return 9.0 / (alpha * alpha); }
  double K() const { return 12.0 * k / (alpha * alpha * beta); }
  void validate() const;
};

/// 2·exp(−α²np/3), the two-sided binomial tail bound. Requires 0 < α < 3/2.
double chernoff_bound(long long n, double p, double alpha);

struct PairDensityReport {
  long long edges = 0;
  double measured = 0.0;  // e(X,Y) / (p|X||Y|)
  double alpha = 0.0;
  bool pass = false;
};

/// Pass iff e(X,Y) = (1 ± α)|X||Y|p. X, Y nonempty and disjoint, p > 0.
PairDensityReport check_pair_density(const ColoredGraph& g, const VertexSet& x, const VertexSet& y,
                                     double p, double alpha);

struct TripleSumReport {
  long long sum = 0;
  double threshold = 0.0;
  bool sparse_regime = false;  // ℓ ≤ 6 log n / p²
  bool pass = false;
};

/// Σ over pairs {v,w} ∈ L of deg*({v,w}, Y), against 72ℓ log n when
/// ℓ ≤ 6 log n / p² and 6ℓ²p² otherwise. Requires disjoint pairs, |Y| = 3|L|
/// and Y disjoint from every pair.
TripleSumReport check_triple_sums(const ColoredGraph& g, const std::vector<Edge>& pairs,
                                  const VertexSet& y, double p);

struct BadSetResult {
  VertexSet y;
  std::vector<VertexSet> low_matching;   // k-sets with deg*(S,X) < (1−α)p^k|X|
  std::vector<VertexSet> high_matching;  // k-sets with deg*(S,X) > (1+α)p^k|X|
  /// K/p^k with K = 12k/(α²β) and β = |X|/n; the size the random-graph
  /// regime predicts. Reported, not enforced.
  double size_bound = 0.0;
  long long ksets_scanned = 0;
};

/// Grows maximal matchings of deviant k-sets in colexicographic order and
/// returns the union of their members. By maximality every k-set inside
/// ground \ (X ∪ Y) has deg*(S,X) = (1 ± α)p^k|X|, whatever the graph.
/// `ground` defaults to the complement of X.
BadSetResult find_bad_set(const ColoredGraph& g, const VertexSet& x, int k, double alpha, double p,
                          const std::optional<VertexSet>& ground = {});

/// Calls f(const std::vector<Vertex>&) for every k-subset of `items` in
/// colexicographic order of positions. Stops early when f returns false.
template <typename F>
void for_each_kset_colex(const std::vector<Vertex>& items, int k, F&& f) {
  const int m = static_cast<int>(items.size());
  if (k < 1 || k > m) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<Vertex> current(k);
  while (true) {
    for (int i = 0; i < k; ++i) current[i] = items[idx[i]];
    if (!f(static_cast<const std::vector<Vertex>&>(current))) return;
    int j = 0;
    while (j < k && idx[j] + 1 == (j + 1 < k ? idx[j + 1] : m)) ++j;
    if (j == k) return;
    ++idx[j];
    for (int i = 0; i < j; ++i) idx[i] = i;
  }
}

}  // namespace mcp
