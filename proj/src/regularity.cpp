#include "mcp/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "mcp/errors.hpp"

namespace mcp {

namespace {

bool in_unit(double x) { return x > 0.0 && x < 1.0; }

// For a fixed A' (as a mask over host ids): the sizes-by-degree scan over B.
struct WorstB {
  double density = 0.0;
  int size = 0;
};

WorstB worst_b(std::vector<int>& degrees, std::vector<int>& order, int a_size, int b_min,
               double p) {
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return degrees[x] < degrees[y]; });
  WorstB best{1e300, 0};
  long long prefix = 0;
  for (int s = 1; s <= static_cast<int>(order.size()); ++s) {
    prefix += degrees[order[s - 1]];
    if (s < b_min) continue;
    const double dens = static_cast<double>(prefix) / (p * a_size * s);
    if (dens < best.density) best = {dens, s};
  }
  return best;
}

VertexSet lowest(const VertexSet& b, const std::vector<int>& order, int size) {
  std::vector<Vertex> out;
  for (int i = 0; i < size; ++i) out.push_back(b[order[i]]);
  return VertexSet(std::move(out));
}

}  // namespace

void RegularityParams::validate() const {
  if (!in_unit(epsilon)) throw ParameterError("regularity: epsilon must lie in (0,1)");
  if (!in_unit(d) && d != 1.0) throw ParameterError("regularity: d must lie in (0,1]");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("regularity: p must lie in (0,1]");
  if (!in_unit(eta)) throw ParameterError("regularity: eta must lie in (0,1)");
  if (!(D >= 1.0)) throw ParameterError("regularity: D must be at least 1");
  if (!in_unit(gamma)) throw ParameterError("regularity: gamma must lie in (0,1)");
  if (!in_unit(buffer_fraction)) throw ParameterError("regularity: buffer fraction must lie in (0,1)");
  if (clusters < 2) throw ParameterError("regularity: at least 2 clusters");
  if (!(degree_tolerance > 0.0)) throw ParameterError("regularity: degree tolerance must be positive");
  if (!in_unit(inheritance_epsilon)) {
    throw ParameterError("regularity: inheritance epsilon must lie in (0,1)");
  }
  if (screening_samples < 0) throw ParameterError("regularity: negative sample count");
}

double ConstantTable::epsilon() const {
  return std::min({1.0 / 1024.0, eps1 * eps1, eps_blow_up, eps_inherit}) / 4.0;
}

double ConstantTable::t0() const {
  const double e = epsilon();
  return 1.0 / (e * e);
}

void ConstantTable::validate() const {
  if (!in_unit(eps1) || !in_unit(eps_blow_up) || !in_unit(eps_inherit)) {
    throw ParameterError("constant table entries must lie in (0,1)");
  }
  if (eps_blow_up > 1.0 / 256.0) throw ParameterError("eps_blow_up is capped at 2^-8");
}

double p_density(const AdjacencyView& g, double p, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw ParameterError("p_density: empty side");
  if (!(p > 0.0)) throw ParameterError("p_density: p must be positive");
  if (!disjoint(a, b)) throw ParameterError("p_density: sides overlap");
  a.check_range(g.n());
  b.check_range(g.n());
  const long long e = g.edges_between(a, b.mask(g.n()));
  return static_cast<double>(e) / (p * static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

int min_subset_size(double eps, std::size_t size) {
  const double raw = std::ceil(eps * static_cast<double>(size) - 1e-9);
  return std::max(1, static_cast<int>(raw));
}

RegularityVerdict is_regular_pair(const AdjacencyView& g, double p, const VertexSet& a,
                                  const VertexSet& b, double eps, double d, RegularityMode mode,
                                  int samples, std::uint64_t seed) {
  if (!(p > 0.0)) throw ParameterError("is_regular_pair: p must be positive");
  if (!(eps > 0.0)) throw ParameterError("is_regular_pair: epsilon must be positive");
  if (!disjoint(a, b)) throw ParameterError("is_regular_pair: sides overlap");
  a.check_range(g.n());
  b.check_range(g.n());
  const double threshold = d - eps;
  RegularityVerdict verdict;
  if (a.empty() || b.empty()) {
    if (threshold > 0.0) {
      verdict.status = RegularityVerdict::Status::Irregular;
      verdict.witness_a = a;
      verdict.witness_b = b;
    }
    return verdict;
  }
  if (mode == RegularityMode::Exhaustive && (a.size() > 14 || b.size() > 14)) {
    throw ParameterError("is_regular_pair: exhaustive mode needs |A|,|B| <= 14; use sampled mode");
  }

  // The whole pair first, so an empty or sparse pair reports (A, B) itself.
  const double whole = p_density(g, p, a, b);
  verdict.min_density = whole;
  if (whole < threshold) {
    verdict.status = RegularityVerdict::Status::Irregular;
    verdict.witness_a = a;
    verdict.witness_b = b;
    verdict.witness_density = whole;
    verdict.subsets_checked = 1;
    return verdict;
  }

  const int a_min = min_subset_size(eps, a.size());
  const int b_min = min_subset_size(eps, b.size());
  const int na = static_cast<int>(a.size());
  std::vector<int> degrees(b.size());
  std::vector<int> order(b.size());
  bool found = false;

  auto examine = [&](const std::vector<Vertex>& sub_a, const Bitset& sub_mask) {
    for (std::size_t i = 0; i < b.size(); ++i) degrees[i] = g.degree(b[i], sub_mask);
    const WorstB worst = worst_b(degrees, order, static_cast<int>(sub_a.size()), b_min, p);
    ++verdict.subsets_checked;
    if (worst.density < verdict.min_density) verdict.min_density = worst.density;
    if (!found && worst.density < threshold) {
      found = true;
      verdict.status = RegularityVerdict::Status::Irregular;
      verdict.witness_a = VertexSet(sub_a);
      verdict.witness_b = lowest(b, order, worst.size);
      verdict.witness_density = worst.density;
    }
  };

  if (mode == RegularityMode::Exhaustive) {
    // Neighbour masks of B into A as small integers.
    std::vector<std::uint32_t> into(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (int j = 0; j < na; ++j) {
        if (g.adjacent(b[i], a[j])) into[i] |= 1U << j;
      }
    }
    const std::uint32_t full = (1U << na) - 1;
    for (std::uint32_t s = 1; s <= full; ++s) {
      const int size = std::popcount(s);
      if (size < a_min) continue;
      for (std::size_t i = 0; i < b.size(); ++i) degrees[i] = std::popcount(into[i] & s);
      const WorstB worst = worst_b(degrees, order, size, b_min, p);
      ++verdict.subsets_checked;
      if (worst.density < verdict.min_density) verdict.min_density = worst.density;
      if (!found && worst.density < threshold) {
        found = true;
        std::vector<Vertex> sub;
        for (int j = 0; j < na; ++j) {
          if (s >> j & 1U) sub.push_back(a[j]);
        }
        verdict.status = RegularityVerdict::Status::Irregular;
        verdict.witness_a = VertexSet(std::move(sub));
        verdict.witness_b = lowest(b, order, worst.size);
        verdict.witness_density = worst.density;
      }
    }
    if (!found) verdict.status = RegularityVerdict::Status::Regular;
    return verdict;
  }

  Rng rng = Rng::stream(seed, 0, "regularity-sample");
  std::vector<Vertex> pool = a.ids();
  // Lowest-degree A-vertices first: the most likely witness.
  {
    const Bitset b_mask = b.mask(g.n());
    std::vector<Vertex> by_degree = pool;
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex x, Vertex y) {
      return g.degree(x, b_mask) < g.degree(y, b_mask);
    });
    std::vector<Vertex> sub(by_degree.begin(), by_degree.begin() + a_min);
    std::sort(sub.begin(), sub.end());
    examine(sub, VertexSet(sub).mask(g.n()));
  }
  for (int s = 0; s < samples && !found; ++s) {
    const int size = a_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(na - a_min) / 4 + 1));
    for (int i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(na - i)]);
    std::vector<Vertex> sub(pool.begin(), pool.begin() + size);
    std::sort(sub.begin(), sub.end());
    examine(sub, VertexSet(sub).mask(g.n()));
  }
  if (!found) verdict.status = RegularityVerdict::Status::NoWitnessFound;
  return verdict;
}

SuperRegularReport is_super_regular(const AdjacencyView& g, const AdjacencyView& gamma, double p,
                                    const VertexSet& a, const VertexSet& b, double eps, double d,
                                    RegularityMode mode, int samples, std::uint64_t seed) {
  SuperRegularReport report;
  report.regularity = is_regular_pair(g, p, a, b, eps, d, mode, samples, seed);
  const Bitset a_mask = a.mask(g.n());
  const Bitset b_mask = b.mask(g.n());
  auto scan = [&](const VertexSet& side, const Bitset& other, std::size_t other_size) {
    for (Vertex v : side) {
      const double need = (d - eps) * std::max(p * static_cast<double>(other_size),
                                               gamma.degree(v, other) / 2.0);
      if (!(static_cast<double>(g.degree(v, other)) > need)) report.offenders.push_back(v);
    }
  };
  scan(a, b_mask, b.size());
  scan(b, a_mask, a.size());
  std::sort(report.offenders.begin(), report.offenders.end());
  report.super_regular = !report.regularity.irregular() && report.offenders.empty();
  return report;
}

InheritanceReport inheritance_scan(const AdjacencyView& g, const AdjacencyView& gamma,
                                   const VertexSet& x, const VertexSet& y,
                                   const VertexSet& candidates, double eps_prime, double d,
                                   double p, RegularityMode mode, int samples,
                                   std::uint64_t seed, double c) {
  if (x.empty() || y.empty()) throw ParameterError("inheritance_scan: empty cluster");
  if (!disjoint(x, y)) throw ParameterError("inheritance_scan: clusters overlap");
  candidates.check_range(gamma.n());
  InheritanceReport report;
  const double n = static_cast<double>(gamma.n());
  report.bound = c / p * std::log(std::exp(1.0) * n / static_cast<double>(x.size()));
  const Bitset x_mask = x.mask(gamma.n());
  std::vector<Vertex> bad;
  for (Vertex z : candidates) {
    const VertexSet nz = VertexSet::from_mask(gamma.neighbors(z) & x_mask);
    bool irregular;
    if (nz.empty()) {
      irregular = d - eps_prime > 0.0;
    } else {
      irregular = is_regular_pair(g, p, nz, y, eps_prime, d, mode, samples,
                                  seed ^ static_cast<std::uint64_t>(z))
                      .irregular();
    }
    if (irregular) bad.push_back(z);
  }
  report.bad = VertexSet(std::move(bad));
  return report;
}

double ClusterPartition::balance() const {
  if (clusters.empty()) return 1.0;
  std::size_t lo = clusters.front().size();
  std::size_t hi = lo;
  for (const auto& c : clusters) {
    lo = std::min(lo, c.size());
    hi = std::max(hi, c.size());
  }
  return lo == 0 ? INFINITY : static_cast<double>(hi) / static_cast<double>(lo);
}

void ClusterPartition::validate(int n) const {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& c : clusters) {
    c.check_range(n);
    for (Vertex v : c) {
      if (seen[v]) throw ParameterError("clusters overlap at vertex " + std::to_string(v));
      seen[v] = 1;
    }
  }
}

ClusterPartition equitable_partition(int n, int t, Rng& rng) {
  if (t < 1 || t > n) throw ParameterError("equitable_partition: need 1 <= t <= n");
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(t));
  for (int i = 0; i < n; ++i) parts[i % t].push_back(order[i]);
  ClusterPartition out;
  for (auto& part : parts) out.clusters.emplace_back(std::move(part));
  return out;
}

}  // namespace mcp
