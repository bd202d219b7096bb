#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcp/graph.hpp"

namespace mcp {

struct Component {
  Color color = 1;
  VertexSet vertices;
  std::vector<Edge> edges;  // u < v, lexicographic
};

/// Coloured graph on cluster indices [t] with its monochromatic components
/// and an optional perfect matching R'.
class ReducedGraph {
 public:
  ReducedGraph() = default;
  /// Labels every monochromatic component of g. The matching, when given,
  /// must be a perfect matching of g (ParameterError otherwise).
  explicit ReducedGraph(ColoredGraph g, std::vector<Edge> matching = {});

  int t() const { return graph_.n(); }
  int r() const { return graph_.r(); }
  const ColoredGraph& graph() const { return graph_; }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Edge>& matching() const { return matching_; }
  bool has_matching() const { return !matching_.empty() || t() == 0; }
  /// Index of the component holding edge ij, or -1 when ij is not an edge.
  int component_of(Vertex i, Vertex j) const;
  /// R'-partner of i, or -1.
  Vertex partner(Vertex i) const;

  ReducedGraph with_matching(std::vector<Edge> matching) const;

 private:
  ColoredGraph graph_;
  std::vector<Component> components_;
  std::vector<int> label_;  // (vertex, colour) -> component
  std::vector<Edge> matching_;
  std::vector<Vertex> partner_;
};

/// Keeps the monochromatic components with at least γt/r vertices.
/// Requires δ(g) ≥ δt and 0 < γ ≤ δ; asserts (logic_error) that at most
/// r²/γ components survive and that δ(R) ≥ (δ−γ)t.
ReducedGraph choose_components(const ColoredGraph& g, double delta, double gamma);

/// Perfect matching of R via maximum matching. t must be even.
/// Throws InfeasibleError when none exists.
std::vector<Edge> perfect_matching(const ReducedGraph& reduced);

struct AllocationCycle {
  int component = 0;
  Color color = 1;
  std::vector<Vertex> vertices;  // H-vertices in cyclic order
};

/// Path of H alternating between X_i and X_j for ij ∈ R'.
struct BufferPath {
  Edge pair;
  std::vector<Vertex> vertices;
};

/// Blueprint H with partition X_i = [cluster_start[i], cluster_start[i] + x_i).
struct AllocationResult {
  int t = 0;
  std::vector<long long> sizes;
  std::vector<Vertex> cluster_start;
  std::vector<int> cluster_of;  // per H-vertex
  std::vector<AllocationCycle> cycles;
  std::optional<Vertex> isolated;
  std::vector<std::vector<Vertex>> buffers;  // X̃_i
  std::vector<BufferPath> matching_paths;
  long long visiting_vertices = 0;  // |V(C')|

  long long vertex_count() const;
};

struct AllocateOptions {
  /// Enforce m ≥ 90t³s, δ(R) ≥ 2t/3 and m ≤ x_i ≤ 10m/9. Structural
  /// requirements (t even, R' perfect, x_i ≥ 0) are always enforced.
  bool check_preconditions = true;
};

/// Visiting closed walks per component (BFS between consecutive unvisited
/// edges, lexicographic), each step replaced by a 3-edge alternating path,
/// R'-paths stretched to 4m/45 vertices, the rest absorbed by a degree-
/// constrained matching on R that leaves at most one vertex over.
AllocationResult allocate_cycles(const ReducedGraph& reduced, const std::vector<long long>& x,
                                 long long m, const AllocateOptions& options = {});

struct AllocationCheck {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Mechanical check of sizes, triangle-freeness, Δ ≤ 2, the (1/50,R')-buffer,
/// the R_k-partition property with every R_k edge used, and the R' paths.
AllocationCheck verify_allocation(const ReducedGraph& reduced, const std::vector<long long>& x,
                                  long long m, const AllocationResult& result);

}  // namespace mcp
