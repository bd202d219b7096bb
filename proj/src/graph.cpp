#include "mcp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcp/errors.hpp"

namespace mcp {

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw ParameterError("vertex set contains duplicates");
  }
  if (!ids_.empty() && ids_.front() < 0) {
    throw ParameterError("vertex set contains a negative id");
  }
}

VertexSet VertexSet::range(Vertex n) {
  VertexSet s;
  s.ids_.resize(std::max(n, 0));
  for (Vertex v = 0; v < n; ++v) s.ids_[v] = v;
  return s;
}

VertexSet VertexSet::from_mask(const Bitset& mask) {
  VertexSet s;
  s.ids_.reserve(mask.count());
  for (auto i = mask.find_first(); i != Bitset::npos; i = mask.find_next(i)) {
    s.ids_.push_back(static_cast<Vertex>(i));
  }
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

Bitset VertexSet::mask(int n) const {
  Bitset m(n);
  for (Vertex v : ids_) m.set(v);
  return m;
}

void VertexSet::check_range(int n) const {
  if (!ids_.empty() && ids_.back() >= n) {
    throw ParameterError("vertex id " + std::to_string(ids_.back()) + " out of range [0," +
                         std::to_string(n) + ")");
  }
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

bool disjoint(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

long long AdjacencyView::edges_between(const VertexSet& a, const Bitset& b_mask) const {
  long long total = 0;
  for (Vertex v : a) total += intersect_count((*rows_)[v], b_mask);
  return total;
}

ColoredGraph::ColoredGraph(int n, int r)
    : n_(n),
      r_(r),
      colors_(static_cast<std::size_t>(n) * n, 0),
      adj_(r, std::vector<Bitset>(n, Bitset(n))),
      any_(n, Bitset(n)),
      edges_(r) {}

std::size_t ColoredGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& e : edges_) total += e.size();
  return total;
}

std::vector<ColoredEdge> ColoredGraph::edges() const {
  std::vector<ColoredEdge> out;
  out.reserve(edge_count());
  for (Color c = 1; c <= r_; ++c) {
    for (const Edge& e : edges_[c - 1]) out.push_back({e.u, e.v, c});
  }
  std::sort(out.begin(), out.end());
  return out;
}

ColoredGraph ColoredGraph::induced(const VertexSet& keep) const {
  keep.check_range(n_);
  const int k = static_cast<int>(keep.size());
  GraphBuilder b(k, r_);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (Color c = color(keep[i], keep[j])) b.add_edge(i, j, c);
    }
  }
  return std::move(b).build();
}

GraphBuilder::GraphBuilder(int n, int r) : g_(0, 1) {
  if (n < 0) throw ParameterError("vertex count must be non-negative");
  if (r < 1 || r > 255) throw ParameterError("colour count must be in [1, 255]");
  g_ = ColoredGraph(n, r);
}

GraphBuilder& GraphBuilder::add_edge(Vertex u, Vertex v, Color c) {
  const int n = g_.n_;
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw ParameterError("edge endpoint out of range: " + std::to_string(u) + " " +
                         std::to_string(v));
  }
  if (u == v) throw ParameterError("self-loop at vertex " + std::to_string(u));
  if (c < 1 || c > g_.r_) throw ParameterError("colour " + std::to_string(c) + " not in [1,r]");
  if (has_edge(u, v)) {
    throw ParameterError("parallel edge " + std::to_string(u) + " " + std::to_string(v));
  }
  if (u > v) std::swap(u, v);
  g_.colors_[static_cast<std::size_t>(u) * n + v] = static_cast<std::uint8_t>(c);
  g_.colors_[static_cast<std::size_t>(v) * n + u] = static_cast<std::uint8_t>(c);
  g_.adj_[c - 1][u].set(v);
  g_.adj_[c - 1][v].set(u);
  g_.any_[u].set(v);
  g_.any_[v].set(u);
  g_.edges_[c - 1].push_back({u, v});
  return *this;
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const { return g_.adjacent(u, v); }

ColoredGraph GraphBuilder::build() && {
  for (auto& list : g_.edges_) std::sort(list.begin(), list.end());
  return std::move(g_);
}

ColoredGraph sample_gnp(int n, double p, Rng& rng) {
  if (n < 1) throw ParameterError("sample_gnp: n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_gnp: p must lie in [0,1]");
  GraphBuilder b(n, 1);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) b.add_edge(u, v, 1);
    }
  }
  return std::move(b).build();
}

ColoredGraph sample_gnp(int n, double p, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, 0, "gnp");
  return sample_gnp(n, p, rng);
}

ColoredGraph color_edges(const ColoredGraph& g, int r, ColoringStrategy strategy,
                         std::uint64_t seed,
                         const std::map<std::pair<Vertex, Vertex>, Color>& assignment) {
  if (r < 1) throw ParameterError("color_edges: r must be at least 1");
  GraphBuilder b(g.n(), r);
  Rng rng = Rng::stream(seed, 0, "colouring");
  std::size_t index = 0;
  for (const ColoredEdge& e : g.edges()) {
    Color c = 1;
    switch (strategy) {
      case ColoringStrategy::UniformRandom:
        c = static_cast<Color>(rng.below(static_cast<std::uint64_t>(r))) + 1;
        break;
      case ColoringStrategy::RoundRobin:
        c = static_cast<Color>(index % static_cast<std::size_t>(r)) + 1;
        break;
      case ColoringStrategy::FixedAssignment: {
        auto it = assignment.find({e.u, e.v});
        if (it == assignment.end()) {
          throw ParameterError("fixed assignment misses edge " + std::to_string(e.u) + " " +
                               std::to_string(e.v));
        }
        c = it->second;
        break;
      }
    }
    b.add_edge(e.u, e.v, c);
    ++index;
  }
  return std::move(b).build();
}

namespace {

VertexSet common_neighborhood_impl(const ColoredGraph& g, const AdjacencyView& view,
                                   const VertexSet& s, const VertexSet& x) {
  if (s.empty()) throw ParameterError("common_neighborhood: S must be nonempty");
  s.check_range(g.n());
  x.check_range(g.n());
  Bitset acc = x.mask(g.n());
  for (Vertex v : s) acc &= view.neighbors(v);
  return VertexSet::from_mask(acc);
}

}  // namespace

VertexSet common_neighborhood(const ColoredGraph& g, const VertexSet& s, const VertexSet& x) {
  return common_neighborhood_impl(g, g.view(), s, x);
}

VertexSet common_neighborhood(const ColoredGraph& g, Color c, const VertexSet& s,
                              const VertexSet& x) {
  if (c < 1 || c > g.r()) throw ParameterError("common_neighborhood: colour out of range");
  return common_neighborhood_impl(g, g.view(c), s, x);
}

ColoredGraph complete_graph(int n, Color c, int r) {
  GraphBuilder b(n, r);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v, c);
  }
  return std::move(b).build();
}

ColoredGraph cycle_graph(int n, Color c, int r) {
  GraphBuilder b(n, r);
  if (n == 2) {
    b.add_edge(0, 1, c);
  } else if (n >= 3) {
    for (Vertex v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n, c);
  }
  return std::move(b).build();
}

}  // namespace mcp
