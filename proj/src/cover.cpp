#include "mcp/cover.hpp"

#include <algorithm>
#include <set>

#include "mcp/errors.hpp"

namespace mcp {

VertexSet CycleCover::covered() const {
  std::vector<Vertex> all;
  for (const Cycle& c : cycles) all.insert(all.end(), c.vertices.begin(), c.vertices.end());
  return VertexSet(std::move(all));
}

void CycleCover::append(const CycleCover& other) {
  cycles.insert(cycles.end(), other.cycles.begin(), other.cycles.end());
}

bool VerificationReport::has(Violation::Kind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

std::string cycle_defect(const ColoredGraph& g, const Cycle& cycle) {
  const auto& vs = cycle.vertices;
  if (vs.empty()) return "empty cycle";
  for (Vertex v : vs) {
    if (v < 0 || v >= g.n()) return "vertex " + std::to_string(v) + " out of range";
  }
  if (std::set<Vertex>(vs.begin(), vs.end()).size() != vs.size()) return "repeated vertex";
  if (vs.size() == 1) return "";
  if (vs.size() == 2) {
    const Color c = g.color(vs[0], vs[1]);
    if (c == 0) return "degenerate edge is not an edge of the host";
    if (c != cycle.color) return "degenerate edge colour mismatch";
    return "";
  }
  if (cycle.color < 1 || cycle.color > g.r()) return "cycle colour out of range";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vertex a = vs[i];
    const Vertex b = vs[(i + 1) % vs.size()];
    if (g.color(a, b) != cycle.color) {
      return "pair " + std::to_string(a) + "-" + std::to_string(b) + " is not an edge of colour " +
             std::to_string(cycle.color);
    }
  }
  return "";
}

VerificationReport verify_cover(const ColoredGraph& g, const CycleCover& cover,
                                const VertexSet& required, const VertexSet& forbidden) {
  VerificationReport report;
  report.cycle_count = cover.size();
  std::vector<int> owner(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < cover.cycles.size(); ++i) {
    const Cycle& c = cover.cycles[i];
    if (auto defect = cycle_defect(g, c); !defect.empty()) {
      report.violations.push_back(
          {Violation::Kind::InvalidCycle, "cycle " + std::to_string(i) + ": " + defect});
    }
    for (Vertex v : c.vertices) {
      if (v < 0 || v >= g.n()) continue;
      if (owner[v] >= 0 && owner[v] != static_cast<int>(i)) {
        report.violations.push_back({Violation::Kind::Overlap,
                                     "vertex " + std::to_string(v) + " in cycles " +
                                         std::to_string(owner[v]) + " and " + std::to_string(i)});
      } else if (owner[v] < 0) {
        owner[v] = static_cast<int>(i);
        ++report.covered_count;
      }
    }
  }
  for (Vertex v : required) {
    if (v < 0 || v >= g.n() || owner[v] < 0) {
      report.violations.push_back(
          {Violation::Kind::MissingRequired, "vertex " + std::to_string(v) + " not covered"});
    }
  }
  for (Vertex v : forbidden) {
    if (v >= 0 && v < g.n() && owner[v] >= 0) {
      report.violations.push_back(
          {Violation::Kind::ForbiddenCovered, "vertex " + std::to_string(v) + " is forbidden"});
    }
  }
  report.valid = report.violations.empty();
  return report;
}

CycleCover canonical(CycleCover cover) {
  for (Cycle& c : cover.cycles) {
    auto& vs = c.vertices;
    if (vs.size() < 2) continue;
    std::rotate(vs.begin(), std::min_element(vs.begin(), vs.end()), vs.end());
    if (vs.size() > 2 && vs.back() < vs[1]) std::reverse(vs.begin() + 1, vs.end());
  }
  std::sort(cover.cycles.begin(), cover.cycles.end(),
            [](const Cycle& a, const Cycle& b) { return a.vertices < b.vertices; });
  return cover;
}

}  // namespace mcp
