#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mcp/cover.hpp"
#include "mcp/errors.hpp"
#include "mcp/graph.hpp"
#include "mcp/io.hpp"

using namespace mcp;

namespace {

ColoredGraph path3() {
  GraphBuilder b(3, 1);
  b.add_edge(0, 1, 1).add_edge(1, 2, 1);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("sample_gnp extremes and errors") {
  CHECK(sample_gnp(5, 0.0, 1).edge_count() == 0);
  CHECK(sample_gnp(5, 1.0, 1).edge_count() == 10);
  CHECK_THROWS_AS(sample_gnp(0, 0.5, 1), ParameterError);
  CHECK_THROWS_AS(sample_gnp(5, -0.1, 1), ParameterError);
  CHECK_THROWS_AS(sample_gnp(5, 1.5, 1), ParameterError);
}

TEST_CASE("sample_gnp edge count concentrates") {
  const double m = 1000.0 * 999.0 / 2.0;
  const double sd = std::sqrt(m * 0.5 * 0.5);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto g = sample_gnp(1000, 0.5, seed);
    CHECK(std::abs(static_cast<double>(g.edge_count()) - m * 0.5) <= 3.0 * sd);
  }
}

TEST_CASE("sample_gnp is reproducible per seed") {
  const auto a = sample_gnp(200, 0.3, 42);
  const auto b = sample_gnp(200, 0.3, 42);
  const auto c = sample_gnp(200, 0.3, 43);
  CHECK(a.edges() == b.edges());
  CHECK(a.edges() != c.edges());
}

TEST_CASE("color_edges strategies") {
  SUBCASE("single colour") {
    const auto g = color_edges(complete_graph(4), 1, ColoringStrategy::UniformRandom, 5);
    CHECK(g.edge_count(1) == 6);
  }
  SUBCASE("fixed assignment is copied verbatim") {
    std::map<std::pair<Vertex, Vertex>, Color> a{{{0, 1}, 3}, {{0, 2}, 1}, {{1, 2}, 2}};
    const auto g = color_edges(complete_graph(3), 3, ColoringStrategy::FixedAssignment, 0, a);
    CHECK(g.color(0, 1) == 3);
    CHECK(g.color(2, 0) == 1);
    CHECK(g.color(1, 2) == 2);
    a.erase({1, 2});
    CHECK_THROWS_AS(color_edges(complete_graph(3), 3, ColoringStrategy::FixedAssignment, 0, a),
                    ParameterError);
  }
  SUBCASE("round robin follows lexicographic order") {
    const auto g = color_edges(complete_graph(5), 3, ColoringStrategy::RoundRobin, 0);
    const auto es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i) CHECK(es[i].color == static_cast<Color>(i % 3) + 1);
  }
  SUBCASE("uniform colours split evenly") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto g = color_edges(sample_gnp(100, 0.5, seed), 2, ColoringStrategy::UniformRandom, seed);
      const double m = static_cast<double>(g.edge_count());
      for (Color c = 1; c <= 2; ++c) {
        CHECK(std::abs(static_cast<double>(g.edge_count(c)) - m / 2) <= 4.0 * std::sqrt(m / 4));
      }
    }
  }
}

TEST_CASE("colour classes partition the edges") {
  const auto g = color_edges(sample_gnp(80, 0.4, 9), 3, ColoringStrategy::UniformRandom, 9);
  std::size_t sum = 0;
  for (Color c = 1; c <= 3; ++c) {
    sum += g.edge_count(c);
    for (const auto& e : g.edges(c)) {
      CHECK(g.color(e.u, e.v) == c);
      CHECK(g.neighbors(e.u, c)[e.v]);
      CHECK(g.neighbors(e.v)[e.u]);
    }
  }
  CHECK(sum == g.edge_count());
  for (Vertex v = 0; v < g.n(); ++v) CHECK(!g.adjacent(v, v));
}

TEST_CASE("builder rejects bad edges") {
  GraphBuilder b(4, 2);
  b.add_edge(0, 1, 1);
  CHECK_THROWS_AS(b.add_edge(1, 0, 2), ParameterError);
  CHECK_THROWS_AS(b.add_edge(2, 2, 1), ParameterError);
  CHECK_THROWS_AS(b.add_edge(0, 4, 1), ParameterError);
  CHECK_THROWS_AS(b.add_edge(0, 2, 3), ParameterError);
  CHECK_THROWS_AS(VertexSet({1, 1}), ParameterError);
}

TEST_CASE("common_neighborhood") {
  CHECK(common_neighborhood(complete_graph(5), {0, 1}, {2, 3, 4}) == VertexSet{2, 3, 4});
  GraphBuilder empty(3, 1);
  CHECK(common_neighborhood(std::move(empty).build(), {0}, {1, 2}).empty());
  CHECK(common_neighborhood(path3(), {0, 2}, {1}) == VertexSet{1});
  CHECK_THROWS_AS(common_neighborhood(path3(), {}, {1}), ParameterError);
}

TEST_CASE("verify_cover") {
  const auto c5 = cycle_graph(5);
  SUBCASE("all singletons") {
    CycleCover cover;
    for (Vertex v = 0; v < 5; ++v) cover.cycles.push_back(vertex_cycle(v));
    const auto rep = verify_partition(c5, cover);
    CHECK(rep.valid);
    CHECK(rep.cycle_count == 5);
  }
  SUBCASE("the five-cycle itself") {
    const auto rep = verify_partition(c5, CycleCover{{Cycle{1, {0, 1, 2, 3, 4}}}});
    CHECK(rep.valid);
    CHECK(rep.cycle_count == 1);
  }
  SUBCASE("overlap") {
    const CycleCover cover{{Cycle{1, {0, 1}}, Cycle{1, {1, 2}}, Cycle{0, {3}}, Cycle{0, {4}}}};
    const auto rep = verify_partition(c5, cover);
    CHECK(!rep.valid);
    CHECK(rep.has(Violation::Kind::Overlap));
  }
  SUBCASE("not a cycle of the graph") {
    const auto rep = verify_partition(c5, CycleCover{{Cycle{1, {0, 2, 1, 3, 4}}}});
    CHECK(rep.has(Violation::Kind::InvalidCycle));
    CHECK(!cycle_defect(c5, Cycle{2, {0, 1}}).empty());
    CHECK(cycle_defect(c5, Cycle{1, {0, 1}}).empty());
  }
  SUBCASE("required and forbidden") {
    const CycleCover cover{{Cycle{1, {0, 1}}}};
    const auto rep = verify_cover(c5, cover, {0, 2}, {1});
    CHECK(rep.has(Violation::Kind::MissingRequired));
    CHECK(rep.has(Violation::Kind::ForbiddenCovered));
    CHECK(verify_cover(c5, cover, {0}, {3}).valid);
  }
}

TEST_CASE("graph and cover files round-trip") {
  const auto g = color_edges(sample_gnp(30, 0.3, 4), 3, ColoringStrategy::UniformRandom, 4);
  std::stringstream ss;
  write_graph(ss, g);
  const auto h = read_graph(ss);
  CHECK(h.n() == g.n());
  CHECK(h.r() == g.r());
  CHECK(h.edges() == g.edges());

  std::stringstream text("3 2\n# comment\n0 1 2\n\n1 2 1  # trailing\n");
  const auto k = read_graph(text);
  CHECK(k.color(0, 1) == 2);
  CHECK(k.color(1, 2) == 1);

  const CycleCover cover{{Cycle{1, {0, 1, 2}}, vertex_cycle(3)}};
  CHECK(cover_from_json(cover_to_json(cover)).cycles == cover.cycles);
}
