#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcp/cover.hpp"
#include "mcp/exact.hpp"
#include "mcp/graph.hpp"

namespace mcp {

/// One coloured edge vw of the auxiliary graph on W, with the host structure
/// that justifies it.
struct AuxEdge {
  enum class Rule {
    Connectors,  // ≥ 2t vertices u ∈ U with v–u–w in the edge's colour
    Matching,    // 2t disjoint U-edges uu' with v–u–u'–w in the edge's colour
  };

  Vertex v = 0;  // host ids, v < w
  Vertex w = 0;
  Color color = 0;
  Rule rule = Rule::Connectors;
  std::vector<Vertex> connectors;  // ascending
  std::vector<Edge> matching;      // (u, u') oriented so that v ~ u and u' ~ w
};

struct AuxiliaryGraph {
  VertexSet w;  // H-vertex i is host vertex w[i]
  int r = 1;
  int t = 1;
  std::vector<AuxEdge> edges;  // by (colour, v, w); rule (a) preferred when both hold

  const AuxEdge* find(Vertex v, Vertex w, Color c) const;
  /// H as a coloured multigraph over indices 0..|W|-1.
  ColorLayers layers() const;
  SimpleGraph underlying() const;
};

/// For every pair of W and every colour, adds the edge when rule (a) holds,
/// otherwise when rule (b) holds. U and W must be disjoint, t ≥ 1.
AuxiliaryGraph build_auxiliary_graph(const ColoredGraph& g, const VertexSet& u, const VertexSet& w,
                                     int t);

struct FineAbsorbOptions {
  /// Throw ParameterError when a checked precondition fails. When false the
  /// violations are only reported.
  bool check_preconditions = true;
  /// Condition (ii) is checked exactly up to this |U|, by sampling beyond.
  int exact_xy_limit = 24;
  int xy_samples = 512;
  std::uint64_t seed = 0;
  SolveBudget budget;
};

struct FineAbsorbReport {
  CycleCover cover;
  AuxiliaryGraph h;
  bool degree_condition = true;  // (i), exhaustive over r-sets of W
  bool xy_condition = true;      // (ii)
  bool xy_exact = false;         // false: only sampled, never certified
  std::vector<std::string> violations;
  int independence = -1;  // α(H); -1 when |W| > 64
  bool h_partition_exact = true;
  int h_cycles = 0;
  double cycle_bound = 0.0;  // 400 r⁴ log r
};

/// Covers W with disjoint monochromatic cycles inside U ∪ W by partitioning
/// the auxiliary graph and expanding each H-cycle greedily with fresh
/// witnesses. Requires |W| ≤ t and U ∩ W = ∅.
FineAbsorbReport fine_absorb(const ColoredGraph& g, const VertexSet& u, const VertexSet& w, int t,
                             int r, const FineAbsorbOptions& options = {});

struct ApproxCoverResult {
  CycleCover cover;
  VertexSet leftover;
  int cycle_budget = 0;      // 3r²
  double leftover_target = 0.0;  // K/p with K = 4000r⁴/β; not guaranteed
};

/// Heuristic: repeatedly grows, in every colour, a path alternating between
/// uncovered W-vertices and free U-vertices, closes it through a common
/// U-neighbour (or a direct edge) and keeps the colour covering most of W.
/// Stops after 3r² cycles.
ApproxCoverResult approx_cover(const ColoredGraph& g, const VertexSet& u, const VertexSet& w,
                               double beta, double p, int r);

struct AbsorptionParams {
  int r = 2;
  double beta = 0.25;
  double p = 0.5;

  double K() const;
  double t1() const;  // K / p^r
  double t2() const;  // 16000 r⁴ / (βp)
  void validate() const;
};

struct AbsorbOptions {
  /// Enforce the fine-absorption preconditions and use the literal t₁, t₂.
  /// Off by default: at desk scale t is fitted to max(|W_i|, 2) and
  /// violations are recorded instead.
  bool strict = false;
  int split_retries = 100;
  std::uint64_t seed = 0;
  SolveBudget budget;
};

struct AbsorbReport {
  CycleCover cover;
  VertexSet w1, w2, w3;
  VertexSet u2, u3;
  std::size_t stage_cycles[3] = {0, 0, 0};
  int t_used[2] = {0, 0};
  int split_attempts = 0;
  int split_violations = 0;  // of the kept split; 0 when (c₁),(c₂) hold
  std::vector<std::string> notes;
  double count_bound = 0.0;  // 900 r⁴ log r
  double spill_bound = 0.0;  // 48 r⁹ / (β p^r)
  std::size_t spill = 0;     // |V(C) \ (U ∪ W)|
  std::size_t stage2_leftover = 0;
  double stage2_target = 0.0;
};

/// Three stages: deviant vertices W₁ by fine absorption against the
/// complement of W₁, most of the rest by approx_cover into U₂, the leftover
/// by fine absorption into U₃. Stage failures throw StageError.
AbsorbReport absorb_pipeline(const ColoredGraph& g, const VertexSet& u, const VertexSet& w,
                             const AbsorptionParams& params, const AbsorbOptions& options = {});

}  // namespace mcp
