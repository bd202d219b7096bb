#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mcp/cover.hpp"
#include "mcp/graph.hpp"

namespace mcp {

struct SolveBudget {
  /// Largest instance solved exactly. Hard ceiling of 20 (memory is 2^n per colour).
  int max_vertices = 16;
  long long node_limit = 2'000'000'000LL;
  double time_limit_seconds = 120.0;
};

/// Coloured multigraph: one simple edge layer per colour, so a pair may carry
/// several colours at once.
struct ColorLayers {
  int n = 0;
  int r = 1;
  std::vector<std::vector<Edge>> layers;  // layers[c - 1]

  static ColorLayers of(const ColoredGraph& g);
  ColorLayers induced(const VertexSet& keep) const;
};

struct PartitionResult {
  int count = 0;
  CycleCover cover;
  long long nodes = 0;
};

/// Minimum number of vertex-disjoint monochromatic cycles (degenerate ones
/// allowed) partitioning V(g). Branches on the lowest uncovered vertex; each
/// child removes one cycle-realisable block containing it. Among optimal
/// covers the lexicographically smallest sequence of sorted blocks is
/// returned, each block as its smallest colour and lexicographically
/// smallest cyclic order starting at its minimum vertex.
///
/// Throws ExactnessUnavailable when n exceeds the budget or the node/time
/// limit is hit.
PartitionResult min_mono_cycle_partition(const ColoredGraph& g, const SolveBudget& budget = {});
PartitionResult min_mono_cycle_partition(const ColorLayers& g, const SolveBudget& budget = {});

/// Not exact for n > budget.max_vertices: solves consecutive vertex chunks of
/// at most budget.max_vertices exactly and concatenates the covers.
PartitionResult chunked_mono_cycle_partition(const ColorLayers& g, const SolveBudget& budget = {});

/// Plain undirected graph.
class SimpleGraph {
 public:
  explicit SimpleGraph(int n = 0) : adj_(static_cast<std::size_t>(n)) {}

  int n() const { return static_cast<int>(adj_.size()); }
  /// Ignores loops and duplicate edges.
  void add_edge(Vertex u, Vertex v);
  bool adjacent(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t edge_count() const;
  std::vector<Edge> edges() const;

  static SimpleGraph underlying(const ColoredGraph& g);
  static SimpleGraph color_class(const ColoredGraph& g, Color c);

 private:
  std::vector<std::vector<Vertex>> adj_;
};

/// Exact independence number by bitset branch and bound; n ≤ 64.
int independence_number(const SimpleGraph& g);

/// Maximum-cardinality matching (Edmonds, via Boost.Graph). With `between`
/// set, only edges with one end in each of the two disjoint sets count.
/// Edges are returned with u < v, sorted.
std::vector<Edge> max_matching(const SimpleGraph& g,
                               const std::optional<std::pair<VertexSet, VertexSet>>& between = {});

}  // namespace mcp
