#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mcp/graph.hpp"
#include "mcp/rng.hpp"

namespace mcp {

/// Numeric knobs of the regularity machinery. The desk-scale entries
/// (clusters, degree_tolerance, inheritance_epsilon, screening_samples)
/// stand in for constants whose literal values are far out of reach.
struct RegularityParams {
  double epsilon = 0.4;  // smallest value random pairs of ~60-vertex clusters pass
  double d = 0.5;  // usually 1/r
  double p = 0.5;
  double eta = 0.1;
  double D = 2.0;  // upper-uniformity
  double gamma = 0.25;
  double buffer_fraction = 1.0 / 50.0;

  int clusters = 8;
  double degree_tolerance = 0.6;     // V^deg window (1 ± tol) p|V_i'|
  double inheritance_epsilon = 0.49;  // ε' of the inheritance scan; neighbourhoods are ~15 vertices
  int screening_samples = 8;

  void validate() const;
};

/// Constant block of the approximate-partition proof: ε = min{2⁻¹⁰, ε₁²,
/// ε_blow-up, ε_inherit}/4 and t₀ = 1/ε². The inputs come from lemmas with
/// no explicit formulas, so they are plain overridable values.
struct ConstantTable {
  double eps1 = 0.01;
  double eps_blow_up = 1.0 / 256.0;  // min{2⁻⁸, ε_blow-up(2, 1, 1/50, 1/r, 10/9)}
  double eps_inherit = 1.0 / 256.0;

  double epsilon() const;
  double t0() const;
  void validate() const;
};

/// e_G(A,B) / (p|A||B|). A, B nonempty and disjoint, p > 0.
double p_density(const AdjacencyView& g, double p, const VertexSet& a, const VertexSet& b);

/// max(1, ⌈ε·size⌉): the smallest subset the definition quantifies over.
int min_subset_size(double eps, std::size_t size);

enum class RegularityMode { Exhaustive, Sampled };

struct RegularityVerdict {
  enum class Status {
    Regular,         // certified (exhaustive mode only)
    Irregular,       // witness below
    NoWitnessFound,  // sampled mode found nothing; not a certificate
  };
  Status status = Status::Regular;
  VertexSet witness_a;
  VertexSet witness_b;
  double witness_density = 0.0;
  /// Exhaustive mode: minimum p-density over all admissible (A', B').
  double min_density = 0.0;
  long long subsets_checked = 0;

  bool irregular() const { return status == Status::Irregular; }
  bool certified() const { return status == Status::Regular; }
};

/// Lower (ε,d,p)-regularity: d_{G,p}(A',B') ≥ d − ε for all A' ⊆ A,
/// B' ⊆ B with |A'| ≥ ε|A|, |B'| ≥ ε|B|. For each A' the worst B' of each
/// size is the set of lowest-degree vertices, so only A' is enumerated
/// (exhaustive, |A|, |B| ≤ 14) or sampled.
RegularityVerdict is_regular_pair(const AdjacencyView& g, double p, const VertexSet& a,
                                  const VertexSet& b, double eps, double d,
                                  RegularityMode mode = RegularityMode::Exhaustive,
                                  int samples = 64, std::uint64_t seed = 0);

struct SuperRegularReport {
  RegularityVerdict regularity;
  std::vector<Vertex> offenders;  // vertices failing the degree condition
  bool super_regular = false;     // certified or sampled-clean, and no offenders
};

/// Regularity in G plus deg_G(u,B) > (d−ε)·max{p|B|, deg_Γ(u,B)/2} for all
/// u ∈ A and symmetrically for B. G must be a subgraph of Γ.
SuperRegularReport is_super_regular(const AdjacencyView& g, const AdjacencyView& gamma, double p,
                                    const VertexSet& a, const VertexSet& b, double eps, double d,
                                    RegularityMode mode = RegularityMode::Exhaustive,
                                    int samples = 64, std::uint64_t seed = 0);

struct InheritanceReport {
  VertexSet bad;
  double bound = 0.0;  // C p⁻¹ log(en/|X|), reported only
};

/// Every candidate z such that (N_Γ(z,X), Y) is not (ε',d,p)-regular in G.
/// An empty neighbourhood counts as irregular whenever d − ε' > 0.
InheritanceReport inheritance_scan(const AdjacencyView& g, const AdjacencyView& gamma,
                                   const VertexSet& x, const VertexSet& y,
                                   const VertexSet& candidates, double eps_prime, double d,
                                   double p, RegularityMode mode = RegularityMode::Exhaustive,
                                   int samples = 64, std::uint64_t seed = 0, double c = 1.0);

/// Clusters V_1..V_t; sizes m ≤ |V_i| ≤ κm.
struct ClusterPartition {
  std::vector<VertexSet> clusters;

  double balance() const;  // max size / min size
  /// Disjointness and range; throws ParameterError.
  void validate(int n) const;
};

/// Uniformly random partition of [n] into t parts whose sizes differ by ≤ 1.
ClusterPartition equitable_partition(int n, int t, Rng& rng);

}  // namespace mcp
