#include "mcp/io.hpp"

#include <fstream>
#include <sstream>

#include "mcp/errors.hpp"

namespace mcp {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  return in;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

[[noreturn]] void bad_line(int lineno, const std::string& why) {
  throw ParameterError("line " + std::to_string(lineno) + ": " + why);
}

// Reads the header and edge lines; stops at a `matching:` line if allowed.
ColoredGraph read_edge_section(std::istream& in, int& lineno, bool allow_footer, bool& saw_footer) {
  std::string line;
  int n = -1;
  int r = -1;
  struct Pending {
    Vertex u, v;
    Color c;
    int lineno;
  };
  std::vector<Pending> pending;
  saw_footer = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (blank(body)) continue;
    if (allow_footer && body.find("matching:") != std::string::npos) {
      saw_footer = true;
      break;
    }
    std::istringstream ss(body);
    if (n < 0) {
      if (!(ss >> n >> r)) bad_line(lineno, "expected header `n r`");
      continue;
    }
    Pending e{};
    e.lineno = lineno;
    if (!(ss >> e.u >> e.v >> e.c)) bad_line(lineno, "expected `u v c`");
    std::string extra;
    if (ss >> extra) bad_line(lineno, "trailing text");
    pending.push_back(e);
  }
  if (n < 0) throw ParameterError("missing header `n r`");
  GraphBuilder b(n, r);
  for (const Pending& e : pending) {
    try {
      b.add_edge(e.u, e.v, e.c);
    } catch (const ParameterError& err) {
      bad_line(e.lineno, err.what());
    }
  }
  return std::move(b).build();
}

}  // namespace

ColoredGraph read_graph(std::istream& in) {
  int lineno = 0;
  bool footer = false;
  return read_edge_section(in, lineno, false, footer);
}

ColoredGraph load_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const ColoredGraph& g) {
  out << g.n() << ' ' << g.r() << '\n';
  for (const ColoredEdge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.color << '\n';
}

void save_graph(const std::string& path, const ColoredGraph& g) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  write_graph(out, g);
}

VertexSet read_vertex_set(std::istream& in) {
  std::vector<Vertex> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        bad_line(lineno, "not a vertex id: " + tok);
      }
      if (used != tok.size()) bad_line(lineno, "not a vertex id: " + tok);
      ids.push_back(v);
    }
  }
  return VertexSet(std::move(ids));
}

VertexSet load_vertex_set(const std::string& path) {
  auto in = open_in(path);
  return read_vertex_set(in);
}

void write_vertex_set(std::ostream& out, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
  out << '\n';
}

std::vector<long long> load_sizes(const std::string& path) {
  auto in = open_in(path);
  std::vector<long long> sizes;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    long long x = 0;
    while (ss >> x) {
      if (x < 0) bad_line(lineno, "negative size");
      sizes.push_back(x);
    }
    if (!ss.eof()) bad_line(lineno, "not an integer");
  }
  return sizes;
}

nlohmann::json cover_to_json(const CycleCover& cover) {
  nlohmann::json out = nlohmann::json::array();
  for (const Cycle& c : cover.cycles) out.push_back({{"color", c.color}, {"vertices", c.vertices}});
  return out;
}

CycleCover cover_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParameterError("cover JSON must be an array");
  CycleCover cover;
  for (const auto& item : j) {
    if (!item.contains("color") || !item.contains("vertices")) {
      throw ParameterError("cover entry needs `color` and `vertices`");
    }
    cover.cycles.push_back(
        Cycle{item.at("color").get<Color>(), item.at("vertices").get<std::vector<Vertex>>()});
  }
  return cover;
}

ReducedFile read_reduced(std::istream& in) {
  int lineno = 0;
  bool footer = false;
  ReducedFile out;
  out.graph = read_edge_section(in, lineno, true, footer);
  if (!footer) return out;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream ss(body);
    Edge e{};
    if (!(ss >> e.u >> e.v)) bad_line(lineno, "expected matching pair `i j`");
    const int t = out.graph.n();
    if (e.u < 0 || e.v < 0 || e.u >= t || e.v >= t) bad_line(lineno, "matching pair out of range");
    if (!out.graph.adjacent(e.u, e.v)) bad_line(lineno, "matching pair is not an edge");
    if (e.u > e.v) std::swap(e.u, e.v);
    out.matching.push_back(e);
  }
  return out;
}

ReducedFile load_reduced(const std::string& path) {
  auto in = open_in(path);
  return read_reduced(in);
}

void write_reduced(std::ostream& out, const ColoredGraph& g, const std::vector<Edge>& matching) {
  write_graph(out, g);
  if (matching.empty()) return;
  out << "matching:\n";
  for (const Edge& e : matching) out << e.u << ' ' << e.v << '\n';
}

}  // namespace mcp
