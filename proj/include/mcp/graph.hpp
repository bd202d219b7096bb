#pragma once

// Exposes the block storage for allocation-free intersection counts.
#define BOOST_DYNAMIC_BITSET_DONT_USE_FRIENDS
#include <boost/dynamic_bitset.hpp>

#include <bit>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mcp/rng.hpp"

namespace mcp {

using Vertex = int;
/// Colours are 1-based; 0 means "no edge" / "no colour".
using Color = int;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// |a ∩ b| for equally sized bitsets.
inline int intersect_count(const Bitset& a, const Bitset& b) {
  int count = 0;
  for (std::size_t i = 0; i < a.m_bits.size(); ++i) count += std::popcount(a.m_bits[i] & b.m_bits[i]);
  return count;
}

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ColoredEdge {
  Vertex u;
  Vertex v;
  Color color;
  friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

/// Sorted set of distinct vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids);
  /// Sorts; throws ParameterError on duplicates or negative ids.
  explicit VertexSet(std::vector<Vertex> ids);

  static VertexSet range(Vertex n);
  static VertexSet from_mask(const Bitset& mask);

  bool contains(Vertex v) const;
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<Vertex>& ids() const { return ids_; }

  Bitset mask(int n) const;
  /// Throws ParameterError when some id is outside [0, n).
  void check_range(int n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool disjoint(const VertexSet& a, const VertexSet& b);

/// Read-only adjacency rows, either of the whole graph or of one colour class.
class AdjacencyView {
 public:
  explicit AdjacencyView(const std::vector<Bitset>& rows) : rows_(&rows) {}

  int n() const { return static_cast<int>(rows_->size()); }
  const Bitset& neighbors(Vertex v) const { return (*rows_)[v]; }
  bool adjacent(Vertex u, Vertex v) const { return (*rows_)[u][v]; }
  int degree(Vertex v) const { return static_cast<int>((*rows_)[v].count()); }
  /// |N(v) ∩ into|
  int degree(Vertex v, const Bitset& into) const { return intersect_count((*rows_)[v], into); }
  /// e(A, B) for disjoint A, B.
  long long edges_between(const VertexSet& a, const Bitset& b_mask) const;

 private:
  const std::vector<Bitset>* rows_;
};

/// Simple undirected graph whose edges each carry one colour in [r].
/// Immutable once built; cheap to share across threads.
class ColoredGraph {
 public:
  ColoredGraph() : ColoredGraph(0, 1) {}

  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t edge_count() const;
  std::size_t edge_count(Color c) const { return edges_[c - 1].size(); }

  /// Colour of uv, or 0 when uv is not an edge.
  Color color(Vertex u, Vertex v) const { return colors_[static_cast<std::size_t>(u) * n_ + v]; }
  bool adjacent(Vertex u, Vertex v) const { return color(u, v) != 0; }

  const Bitset& neighbors(Vertex v) const { return any_[v]; }
  const Bitset& neighbors(Vertex v, Color c) const { return adj_[c - 1][v]; }
  int degree(Vertex v) const { return static_cast<int>(any_[v].count()); }

  AdjacencyView view() const { return AdjacencyView(any_); }
  AdjacencyView view(Color c) const { return AdjacencyView(adj_[c - 1]); }

  /// Edges of one colour, u < v, lexicographic.
  const std::vector<Edge>& edges(Color c) const { return edges_[c - 1]; }
  /// All edges, lexicographic by (u, v).
  std::vector<ColoredEdge> edges() const;

  /// Induced subgraph on `keep`, relabelled 0..|keep|-1 in sorted order.
  ColoredGraph induced(const VertexSet& keep) const;

 private:
  friend class GraphBuilder;
  ColoredGraph(int n, int r);

  int n_;
  int r_;
  std::vector<std::uint8_t> colors_;
  std::vector<std::vector<Bitset>> adj_;
  std::vector<Bitset> any_;
  std::vector<std::vector<Edge>> edges_;
};

class GraphBuilder {
 public:
  GraphBuilder(int n, int r);

  /// Throws ParameterError on self-loops, out-of-range ids or colours and
  /// on an edge that is already present (in any colour).
  GraphBuilder& add_edge(Vertex u, Vertex v, Color c);
  bool has_edge(Vertex u, Vertex v) const;
  ColoredGraph build() &&;

 private:
  ColoredGraph g_;
};

/// G(n, p) with every edge given colour 1 (r = 1); recolour with color_edges.
ColoredGraph sample_gnp(int n, double p, std::uint64_t seed);
ColoredGraph sample_gnp(int n, double p, Rng& rng);

enum class ColoringStrategy { UniformRandom, FixedAssignment, RoundRobin };

/// Recolours every edge of g with a colour in [r].
///   UniformRandom   - independent uniform colour per edge (lexicographic edge order).
///   RoundRobin      - the i-th edge in lexicographic order gets colour (i mod r) + 1.
///   FixedAssignment - colours taken from `assignment`, keyed by (min, max) endpoint.
ColoredGraph color_edges(const ColoredGraph& g, int r, ColoringStrategy strategy,
                         std::uint64_t seed,
                         const std::map<std::pair<Vertex, Vertex>, Color>& assignment = {});

/// {x ∈ X : x adjacent (any colour) to every s ∈ S}. Empty S is rejected.
VertexSet common_neighborhood(const ColoredGraph& g, const VertexSet& s, const VertexSet& x);
/// Same, restricted to one colour class.
VertexSet common_neighborhood(const ColoredGraph& g, Color c, const VertexSet& s,
                              const VertexSet& x);

// Small fixtures used by tests, the CLI and the pipeline shortcuts.
ColoredGraph complete_graph(int n, Color c = 1, int r = 1);
ColoredGraph cycle_graph(int n, Color c = 1, int r = 1);

}  // namespace mcp
