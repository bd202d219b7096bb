#include <doctest.h>

#include "mcp/cover.hpp"
#include "mcp/errors.hpp"
#include "mcp/exact.hpp"
#include "oracles.hpp"

using namespace mcp;

namespace {

ColoredGraph random_colored(int n, double p, int r, std::uint64_t seed) {
  return color_edges(sample_gnp(n, p, seed), r, ColoringStrategy::UniformRandom, seed + 17);
}

}  // namespace

TEST_CASE("solver on fixed instances") {
  GraphBuilder one(1, 1);
  const auto single = min_mono_cycle_partition(std::move(one).build());
  CHECK(single.count == 1);
  CHECK(single.cover.cycles.front().vertices == std::vector<Vertex>{0});

  const auto k4 = min_mono_cycle_partition(complete_graph(4));
  CHECK(k4.count == 1);
  CHECK(k4.cover.cycles.front().vertices == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(verify_partition(complete_graph(4), k4.cover).valid);

  // Two triangles joined by a bridge of another colour.
  GraphBuilder b(6, 2);
  b.add_edge(0, 1, 1).add_edge(1, 2, 1).add_edge(0, 2, 1);
  b.add_edge(3, 4, 1).add_edge(4, 5, 1).add_edge(3, 5, 1).add_edge(2, 3, 2);
  CHECK(min_mono_cycle_partition(std::move(b).build()).count == 2);
}

TEST_CASE("solver agrees with the set-partition enumerator") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const int r = 2 + static_cast<int>(seed % 2);
    const double p = seed % 3 == 0 ? 0.3 : 0.6;
    const auto g = random_colored(n, p, r, seed);
    const auto res = min_mono_cycle_partition(g);
    CHECK(res.count == oracle::min_cycle_partition(g));
    CHECK(res.count == static_cast<int>(res.cover.size()));
    CHECK(verify_partition(g, res.cover).valid);
  }
}

TEST_CASE("adding an edge never raises the optimum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = random_colored(8, 0.35, 2, seed);
    GraphBuilder b(8, 2);
    for (const auto& e : g.edges()) b.add_edge(e.u, e.v, e.color);
    bool added = false;
    for (Vertex u = 0; u < 8 && !added; ++u) {
      for (Vertex v = u + 1; v < 8 && !added; ++v) {
        if (!g.adjacent(u, v)) {
          b.add_edge(u, v, 1 + static_cast<Color>(seed % 2));
          added = true;
        }
      }
    }
    const auto h = std::move(b).build();
    CHECK(min_mono_cycle_partition(h).count <= min_mono_cycle_partition(g).count);
    CHECK(min_mono_cycle_partition(g).count <= g.n());
  }
}

TEST_CASE("solver output is deterministic") {
  const auto g = random_colored(9, 0.5, 2, 77);
  const auto a = min_mono_cycle_partition(g);
  const auto b = min_mono_cycle_partition(g);
  CHECK(a.cover.cycles == b.cover.cycles);
}

TEST_CASE("solver budget") {
  CHECK_THROWS_AS(min_mono_cycle_partition(complete_graph(17)), ExactnessUnavailable);
  SolveBudget tight;
  tight.max_vertices = 5;
  CHECK_THROWS_AS(min_mono_cycle_partition(complete_graph(6), tight), ExactnessUnavailable);
  const auto layers = ColorLayers::of(random_colored(40, 0.3, 2, 3));
  const auto chunked = chunked_mono_cycle_partition(layers);
  CHECK(chunked.count == static_cast<int>(chunked.cover.size()));
  CHECK(chunked.cover.covered() == VertexSet::range(40));
}

TEST_CASE("multigraph layers allow two colours on a pair") {
  ColorLayers g;
  g.n = 3;
  g.r = 2;
  g.layers = {{{0, 1}, {1, 2}}, {{0, 2}, {0, 1}}};
  // No single colour closes the triangle.
  CHECK(min_mono_cycle_partition(g).count == 2);
  g.layers[0].push_back({0, 2});
  CHECK(min_mono_cycle_partition(g).count == 1);
}

TEST_CASE("independence number") {
  CHECK(independence_number(SimpleGraph(5)) == 5);
  CHECK(independence_number(SimpleGraph::underlying(complete_graph(5))) == 1);
  CHECK(independence_number(SimpleGraph::underlying(cycle_graph(5))) == 2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 12);
    const auto g = SimpleGraph::underlying(sample_gnp(n, 0.3 + 0.02 * static_cast<double>(seed % 10), seed));
    CHECK(independence_number(g) == oracle::independence_number(n, g.edges()));
  }
  CHECK_THROWS_AS(independence_number(SimpleGraph(65)), ParameterError);
}

TEST_CASE("maximum matching") {
  SimpleGraph m3(6);
  m3.add_edge(0, 1);
  m3.add_edge(2, 3);
  m3.add_edge(4, 5);
  CHECK(max_matching(m3).size() == 3);

  SimpleGraph star(5);
  for (Vertex v = 1; v < 5; ++v) star.add_edge(0, v);
  CHECK(max_matching(star).size() == 1);

  SimpleGraph k33(6);
  for (Vertex u = 0; u < 3; ++u) {
    for (Vertex v = 3; v < 6; ++v) k33.add_edge(u, v);
  }
  k33.add_edge(0, 1);
  const auto between = max_matching(k33, std::make_pair(VertexSet{0, 1, 2}, VertexSet{3, 4, 5}));
  CHECK(between.size() == 3);
  for (const auto& e : between) CHECK((e.u < 3) != (e.v < 3));
  // Only the inside edge is available when the sides are {0,1} and {2}.
  CHECK(max_matching(k33, std::make_pair(VertexSet{0}, VertexSet{1})).size() == 1);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 7);
    const auto g = SimpleGraph::underlying(sample_gnp(n, 0.35, seed + 100));
    const auto mm = max_matching(g);
    CHECK(static_cast<int>(mm.size()) == oracle::max_matching_size(n, g.edges()));
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    for (const auto& e : mm) {
      CHECK(g.adjacent(e.u, e.v));
      CHECK(used[e.u]++ == 0);
      CHECK(used[e.v]++ == 0);
    }
  }
}
