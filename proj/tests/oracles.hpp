#pragma once

// Slow reference implementations used only by the tests. None of them call
// into the library beyond the graph accessors.

#include <string>
#include <vector>

#include "mcp/graph.hpp"
#include "mcp/reduced.hpp"

namespace oracle {

using mcp::Color;
using mcp::ColoredGraph;
using mcp::Edge;
using mcp::Vertex;
using mcp::VertexSet;

/// Vertex, edge, or a block spanned by a cycle of a single colour.
bool realizable(const ColoredGraph& g, unsigned block);

/// Fewest blocks over every set partition of V(g) into realizable blocks.
/// Restricted growth strings, n ≤ 10.
int min_cycle_partition(const ColoredGraph& g);

/// Largest matching by include/exclude recursion over the edge list.
int max_matching_size(int n, const std::vector<Edge>& edges);

/// Largest independent set over all 2^n subsets, n ≤ 20.
int independence_number(int n, const std::vector<Edge>& edges);

/// k-sets outside X ∪ Y whose common neighbourhood in X is outside
/// (1 ± α)p^k|X|, counted by explicit adjacency lookups.
long long deviant_ksets(const ColoredGraph& g, const VertexSet& x, const VertexSet& y, int k,
                        double alpha, double p);

/// Lower regularity in colour c checked over every A' ⊆ A and B' ⊆ B with
/// |A'| ≥ ε|A|, |B'| ≥ ε|B|. |A| + |B| ≤ 22.
bool regular_by_enumeration(const ColoredGraph& g, Color c, double p, const VertexSet& a,
                            const VertexSet& b, double eps, double d);

/// Everything wrong with an allocation, recomputed from the cycles alone:
/// sizes, cycle shape, Δ ≤ 2, no triangles, edges confined to their
/// component and covering it, buffers, and long R'-runs.
std::vector<std::string> allocation_defects(const mcp::ReducedGraph& reduced,
                                            const std::vector<long long>& x, long long m,
                                            const mcp::AllocationResult& res);

}  // namespace oracle
