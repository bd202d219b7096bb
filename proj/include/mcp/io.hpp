#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcp/cover.hpp"
#include "mcp/graph.hpp"

namespace mcp {

// Colour-edge-list format: a header line `n r`, then one `u v c` line per
// edge (0-based vertices, 1-based colours). Blank lines and text after `#`
// are ignored.
ColoredGraph read_graph(std::istream& in);
ColoredGraph load_graph(const std::string& path);
void write_graph(std::ostream& out, const ColoredGraph& g);
void save_graph(const std::string& path, const ColoredGraph& g);

/// Whitespace-separated vertex ids, `#` comments allowed.
VertexSet read_vertex_set(std::istream& in);
VertexSet load_vertex_set(const std::string& path);
void write_vertex_set(std::ostream& out, const VertexSet& s);

/// Whitespace-separated non-negative integers (cluster sizes).
std::vector<long long> load_sizes(const std::string& path);

nlohmann::json cover_to_json(const CycleCover& cover);
CycleCover cover_from_json(const nlohmann::json& j);

/// Reduced-graph file: the colour-edge-list format over cluster indices,
/// optionally followed by a `matching:` line and one `i j` pair per line.
struct ReducedFile {
  ColoredGraph graph;
  std::vector<Edge> matching;
};

ReducedFile read_reduced(std::istream& in);
ReducedFile load_reduced(const std::string& path);
void write_reduced(std::ostream& out, const ColoredGraph& g, const std::vector<Edge>& matching);

}  // namespace mcp
