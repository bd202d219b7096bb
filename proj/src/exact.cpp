#include "mcp/exact.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <string>

#include "mcp/errors.hpp"

namespace mcp {

namespace {

constexpr int kHardVertexCap = 20;

using Mask = std::uint32_t;

/// ham_end[S] has bit v iff some colour-c path starts at min(S), ends at v
/// and visits exactly S.
std::vector<Mask> hamiltonian_path_ends(const std::vector<Mask>& adj, int n) {
  const Mask full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::vector<Mask> ends(static_cast<std::size_t>(full) + 1, 0);
  for (Mask s = 1; s <= full && s != 0; ++s) {
    const int low = std::countr_zero(s);
    if (s == (Mask{1} << low)) {
      ends[s] = s;
      continue;
    }
    Mask acc = 0;
    for (Mask rest = s & ~(Mask{1} << low); rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (ends[s & ~(Mask{1} << v)] & adj[v]) acc |= Mask{1} << v;
    }
    ends[s] = acc;
    if (s == full) break;
  }
  return ends;
}

struct BlockTables {
  int n = 0;
  int r = 0;
  std::vector<std::vector<Mask>> adj;   // per colour
  std::vector<std::vector<Mask>> ends;  // per colour
  std::vector<Mask> any_adj;

  /// Smallest colour realising block b as a cycle; 0 for singletons, -1 if none.
  int block_color(Mask b) const {
    const int size = std::popcount(b);
    if (size == 1) return 0;
    const int low = std::countr_zero(b);
    if (size == 2) {
      const int other = std::countr_zero(b & ~(Mask{1} << low));
      for (int c = 0; c < r; ++c) {
        if (adj[c][low] >> other & 1U) return c + 1;
      }
      return -1;
    }
    for (int c = 0; c < r; ++c) {
      if (ends[c][b] & adj[c][low]) return c + 1;
    }
    return -1;
  }

  /// Lexicographically smallest cyclic order of b in colour c starting at min(b).
  std::vector<Vertex> cyclic_order(Mask b, int c) const {
    const int low = std::countr_zero(b);
    std::vector<Vertex> order{low};
    if (std::popcount(b) <= 2) {
      if (std::popcount(b) == 2) order.push_back(std::countr_zero(b & ~(Mask{1} << low)));
      return order;
    }
    const auto& a = adj[c - 1];
    const auto& e = ends[c - 1];
    Mask rem = b & ~(Mask{1} << low);
    int current = low;
    while (rem) {
      // w extends the path iff a colour-c path low -> ... -> w covers rem ∪ {low},
      // i.e. the reversed remainder can still close back at low.
      const Mask closing = e[rem | (Mask{1} << low)] & a[current] & rem;
      const int w = std::countr_zero(closing);
      order.push_back(w);
      rem &= ~(Mask{1} << w);
      current = w;
    }
    return order;
  }
};

BlockTables build_tables(const ColorLayers& g) {
  BlockTables t;
  t.n = g.n;
  t.r = g.r;
  t.adj.assign(t.r, std::vector<Mask>(t.n, 0));
  t.any_adj.assign(t.n, 0);
  for (int c = 0; c < t.r; ++c) {
    for (const Edge& e : g.layers[c]) {
      if (e.u < 0 || e.v < 0 || e.u >= t.n || e.v >= t.n || e.u == e.v) {
        throw ParameterError("colour layer edge out of range");
      }
      t.adj[c][e.u] |= Mask{1} << e.v;
      t.adj[c][e.v] |= Mask{1} << e.u;
      t.any_adj[e.u] |= Mask{1} << e.v;
      t.any_adj[e.v] |= Mask{1} << e.u;
    }
  }
  for (int c = 0; c < t.r; ++c) t.ends.push_back(hamiltonian_path_ends(t.adj[c], t.n));
  return t;
}

std::vector<Vertex> sorted_members(Mask b) {
  std::vector<Vertex> out;
  for (; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

}  // namespace

ColorLayers ColorLayers::of(const ColoredGraph& g) {
  ColorLayers out;
  out.n = g.n();
  out.r = g.r();
  for (Color c = 1; c <= g.r(); ++c) out.layers.push_back(g.edges(c));
  return out;
}

ColorLayers ColorLayers::induced(const VertexSet& keep) const {
  keep.check_range(n);
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
  ColorLayers out;
  out.n = static_cast<int>(keep.size());
  out.r = r;
  out.layers.resize(static_cast<std::size_t>(r));
  for (int c = 0; c < r; ++c) {
    for (const Edge& e : layers[c]) {
      if (index[e.u] >= 0 && index[e.v] >= 0) out.layers[c].push_back({index[e.u], index[e.v]});
    }
  }
  return out;
}

PartitionResult min_mono_cycle_partition(const ColoredGraph& g, const SolveBudget& budget) {
  return min_mono_cycle_partition(ColorLayers::of(g), budget);
}

PartitionResult min_mono_cycle_partition(const ColorLayers& g, const SolveBudget& budget) {
  const int n = g.n;
  if (static_cast<int>(g.layers.size()) != g.r) throw ParameterError("colour layers do not match r");
  const int cap = std::min(budget.max_vertices, kHardVertexCap);
  if (n > cap) {
    throw ExactnessUnavailable("exactness unavailable: n = " + std::to_string(n) +
                               " exceeds the exact-solve budget of " + std::to_string(cap));
  }
  PartitionResult result;
  if (n == 0) return result;

  const auto start = std::chrono::steady_clock::now();
  const BlockTables tables = build_tables(g);
  const Mask full = (Mask{1} << n) - 1;

  std::vector<std::int8_t> feasible(static_cast<std::size_t>(full) + 1, 0);
  for (Mask b = 1; b <= full; ++b) {
    feasible[b] = tables.block_color(b) >= 0 ? 1 : 0;
    if (b == full) break;
  }

  // best[S]: optimum for the uncovered set S, filled in increasing order of S.
  std::vector<std::uint8_t> best(static_cast<std::size_t>(full) + 1, 0);
  long long nodes = 0;
  for (Mask s = 1; s <= full; ++s) {
    const Mask low = s & (~s + 1);
    const Mask rest = s & ~low;
    int value = 1 + best[rest];  // singleton child
    // Upper bound from the singleton child; a child cannot beat 1 + 0.
    for (Mask sub = rest; sub && value > 1; sub = (sub - 1) & rest) {
      ++nodes;
      const Mask block = sub | low;
      if (feasible[block] && 1 + best[s & ~block] < value) value = 1 + best[s & ~block];
    }
    best[s] = static_cast<std::uint8_t>(value);
    if ((s & 0xFFF) == 0) {
      if (nodes > budget.node_limit) throw ExactnessUnavailable("exact solve exceeded node limit");
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (elapsed.count() > budget.time_limit_seconds) {
        throw ExactnessUnavailable("exact solve exceeded time limit");
      }
    }
    if (s == full) break;
  }

  Mask s = full;
  while (s) {
    const Mask low = s & (~s + 1);
    const Mask rest = s & ~low;
    std::vector<Vertex> chosen_members;
    Mask chosen = 0;
    bool have = false;
    auto consider = [&](Mask block) {
      if (!feasible[block] || 1 + best[s & ~block] != best[s]) return;
      auto members = sorted_members(block);
      if (!have || members < chosen_members) {
        chosen_members = std::move(members);
        chosen = block;
        have = true;
      }
    };
    consider(low);
    for (Mask sub = rest; sub; sub = (sub - 1) & rest) consider(sub | low);
    const int color = tables.block_color(chosen);
    Cycle cycle;
    cycle.color = color;
    cycle.vertices = tables.cyclic_order(chosen, color);
    result.cover.cycles.push_back(std::move(cycle));
    s &= ~chosen;
  }
  result.count = best[full];
  result.nodes = nodes;
  return result;
}

PartitionResult chunked_mono_cycle_partition(const ColorLayers& g, const SolveBudget& budget) {
  const int chunk = std::max(1, std::min(budget.max_vertices, kHardVertexCap));
  PartitionResult total;
  for (int begin = 0; begin < g.n; begin += chunk) {
    std::vector<Vertex> ids;
    for (int v = begin; v < std::min(g.n, begin + chunk); ++v) ids.push_back(v);
    const VertexSet part(ids);
    PartitionResult sub = min_mono_cycle_partition(g.induced(part), budget);
    for (Cycle& c : sub.cover.cycles) {
      for (Vertex& v : c.vertices) v = part[v];
      total.cover.cycles.push_back(std::move(c));
    }
    total.count += sub.count;
    total.nodes += sub.nodes;
  }
  return total;
}

void SimpleGraph::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n() || v >= n()) throw ParameterError("edge endpoint out of range");
  if (u == v || adjacent(u, v)) return;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

bool SimpleGraph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::find(a.begin(), a.end(), v) != a.end();
}

std::size_t SimpleGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adj_) twice += a.size();
  return twice / 2;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < n(); ++u) {
    for (Vertex v : adj_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimpleGraph SimpleGraph::underlying(const ColoredGraph& g) {
  SimpleGraph s(g.n());
  for (const ColoredEdge& e : g.edges()) s.add_edge(e.u, e.v);
  return s;
}

SimpleGraph SimpleGraph::color_class(const ColoredGraph& g, Color c) {
  SimpleGraph s(g.n());
  for (const Edge& e : g.edges(c)) s.add_edge(e.u, e.v);
  return s;
}

namespace {

void independent_search(std::uint64_t cand, int size, int& best,
                        const std::vector<std::uint64_t>& adj) {
  while (true) {
    if (cand == 0) {
      best = std::max(best, size);
      return;
    }
    if (size + std::popcount(cand) <= best) return;
    // Vertices of degree ≤ 1 inside cand belong to some maximum independent set.
    int pick = -1;
    int pick_degree = -1;
    bool forced = false;
    for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj[v] & cand);
      if (d <= 1) {
        pick = v;
        forced = true;
        break;
      }
      if (d > pick_degree) {
        pick = v;
        pick_degree = d;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    if (forced) {
      cand &= ~(adj[pick] | bit);
      ++size;
      continue;
    }
    independent_search(cand & ~(adj[pick] | bit), size + 1, best, adj);
    cand &= ~bit;
  }
}

}  // namespace

int independence_number(const SimpleGraph& g) {
  if (g.n() > 64) throw ParameterError("independence_number: n must be at most 64");
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    for (Vertex w : g.neighbors(v)) adj[v] |= std::uint64_t{1} << w;
  }
  const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n()) - 1);
  int best = 0;
  independent_search(all, 0, best, adj);
  return best;
}

std::vector<Edge> max_matching(const SimpleGraph& g,
                               const std::optional<std::pair<VertexSet, VertexSet>>& between) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  if (g.n() == 0) return {};
  std::vector<std::int8_t> side;
  if (between) {
    if (!disjoint(between->first, between->second)) {
      throw ParameterError("max_matching: the two sides must be disjoint");
    }
    between->first.check_range(g.n());
    between->second.check_range(g.n());
    side.assign(static_cast<std::size_t>(g.n()), 0);
    for (Vertex v : between->first) side[v] = 1;
    for (Vertex v : between->second) side[v] = 2;
  }
  BoostGraph bg(static_cast<std::size_t>(g.n()));
  for (const Edge& e : g.edges()) {
    if (between && (side[e.u] == 0 || side[e.v] == 0 || side[e.u] == side[e.v])) continue;
    boost::add_edge(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v), bg);
  }
  std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(
      static_cast<std::size_t>(g.n()));
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  std::vector<Edge> out;
  const auto null = boost::graph_traits<BoostGraph>::null_vertex();
  for (std::size_t u = 0; u < mate.size(); ++u) {
    if (mate[u] != null && u < mate[u]) {
      out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(mate[u])});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mcp
