#pragma once

#include <string>
#include <vector>

#include "mcp/graph.hpp"

namespace mcp {

/// Monochromatic cycle. Length 1 (a vertex, colour 0) and length 2 (an edge,
/// carrying that edge's colour) are the degenerate cases.
struct Cycle {
  Color color = 0;
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.size(); }
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

inline Cycle vertex_cycle(Vertex v) { return Cycle{0, {v}}; }

struct CycleCover {
  std::vector<Cycle> cycles;

  std::size_t size() const { return cycles.size(); }
  /// Union of cycle vertices; throws ParameterError if cycles overlap.
  VertexSet covered() const;
  void append(const CycleCover& other);
};

struct Violation {
  enum class Kind { InvalidCycle, Overlap, MissingRequired, ForbiddenCovered };
  Kind kind;
  std::string detail;
};

struct VerificationReport {
  bool valid = true;
  std::size_t cycle_count = 0;
  std::size_t covered_count = 0;
  std::vector<Violation> violations;

  bool has(Violation::Kind kind) const;
};

/// Describes why `cycle` is not a monochromatic cycle of g, or "" when it is.
std::string cycle_defect(const ColoredGraph& g, const Cycle& cycle);

/// Checks every cycle against g, pairwise disjointness, required ⊆ covered
/// and covered ∩ forbidden = ∅. Never throws on a bad cover.
VerificationReport verify_cover(const ColoredGraph& g, const CycleCover& cover,
                                const VertexSet& required, const VertexSet& forbidden);

/// Partition check: required = V(g), forbidden = ∅.
inline VerificationReport verify_partition(const ColoredGraph& g, const CycleCover& cover) {
  return verify_cover(g, cover, VertexSet::range(g.n()), {});
}

/// Rotates each cycle to start at its minimum vertex with the smaller
/// neighbour second, then sorts cycles. Used for deterministic output.
CycleCover canonical(CycleCover cover);

}  // namespace mcp
