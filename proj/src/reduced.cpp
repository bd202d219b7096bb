#include "mcp/reduced.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "mcp/errors.hpp"
#include "mcp/exact.hpp"

namespace mcp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

int min_degree(const ColoredGraph& g) {
  int best = INT_MAX;
  for (Vertex v = 0; v < g.n(); ++v) best = std::min(best, g.degree(v));
  return g.n() == 0 ? 0 : best;
}

// Closed walk through every edge of the component, as the cyclic vertex
// sequence w_0..w_{L-1}. first[e] is the step q at which edge e (index into
// comp.edges) is first traversed as w_q -> w_{q+1}.
std::vector<Vertex> closed_walk(const Component& comp, int t, std::vector<int>& first) {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(t));
  std::map<Edge, int> index;
  for (std::size_t e = 0; e < comp.edges.size(); ++e) {
    const Edge& ed = comp.edges[e];
    adj[ed.u].push_back(ed.v);
    adj[ed.v].push_back(ed.u);
    index[ed] = static_cast<int>(e);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  first.assign(comp.edges.size(), -1);

  auto bfs = [&](Vertex from, Vertex to) {
    std::vector<Vertex> prev(static_cast<std::size_t>(t), -1);
    std::deque<Vertex> queue{from};
    prev[from] = from;
    while (!queue.empty() && prev[to] < 0) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : adj[x]) {
        if (prev[y] < 0) {
          prev[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (prev[to] < 0) throw std::logic_error("allocate: component is not connected");
    std::vector<Vertex> path;
    for (Vertex x = to; x != from; x = prev[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
  };

  const Vertex start = comp.edges.front().u;
  std::vector<Vertex> walk{start};
  auto step = [&](Vertex next) {
    const Vertex cur = walk.back();
    const int e = index.at(Edge{std::min(cur, next), std::max(cur, next)});
    if (first[e] < 0) first[e] = static_cast<int>(walk.size()) - 1;
    walk.push_back(next);
  };
  for (std::size_t e = 0; e < comp.edges.size(); ++e) {
    if (first[e] >= 0) continue;
    const Edge& ed = comp.edges[e];
    const auto to_u = bfs(walk.back(), ed.u);
    const auto to_v = bfs(walk.back(), ed.v);
    const bool via_u = to_u.size() <= to_v.size();
    for (Vertex x : via_u ? to_u : to_v) step(x);
    step(via_u ? ed.v : ed.u);
  }
  for (Vertex x : bfs(walk.back(), start)) step(x);
  walk.pop_back();  // back at start
  return walk;
}

long long ceil_div(long long a, long long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

}  // namespace

ReducedGraph::ReducedGraph(ColoredGraph g, std::vector<Edge> matching)
    : graph_(std::move(g)) {
  const int t = graph_.n();
  const int r = graph_.r();
  label_.assign(static_cast<std::size_t>(t) * r, -1);
  for (Color c = 1; c <= r; ++c) {
    UnionFind uf(t);
    for (const Edge& e : graph_.edges(c)) uf.unite(e.u, e.v);
    std::map<int, int> root_to_comp;
    for (const Edge& e : graph_.edges(c)) {
      const int root = uf.find(e.u);
      auto [it, fresh] = root_to_comp.try_emplace(root, static_cast<int>(components_.size()));
      if (fresh) components_.push_back(Component{c, {}, {}});
      components_[it->second].edges.push_back(e);
    }
    for (auto [root, idx] : root_to_comp) {
      (void)root;
      std::vector<Vertex> vs;
      for (const Edge& e : components_[idx].edges) {
        vs.push_back(e.u);
        vs.push_back(e.v);
      }
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      for (Vertex v : vs) label_[static_cast<std::size_t>(v) * r + (c - 1)] = idx;
      components_[idx].vertices = VertexSet(std::move(vs));
    }
  }
  if (!matching.empty()) {
    partner_.assign(static_cast<std::size_t>(t), -1);
    for (Edge& e : matching) {
      if (e.u < 0 || e.v < 0 || e.u >= t || e.v >= t || !graph_.adjacent(e.u, e.v)) {
        throw ParameterError("matching pair is not an edge of R");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      if (partner_[e.u] >= 0 || partner_[e.v] >= 0) {
        throw ParameterError("matching pairs share a vertex");
      }
      partner_[e.u] = e.v;
      partner_[e.v] = e.u;
    }
    if (std::find(partner_.begin(), partner_.end(), -1) != partner_.end()) {
      throw ParameterError("matching is not perfect");
    }
    std::sort(matching.begin(), matching.end());
    matching_ = std::move(matching);
  }
}

int ReducedGraph::component_of(Vertex i, Vertex j) const {
  if (i < 0 || j < 0 || i >= t() || j >= t()) return -1;
  const Color c = graph_.color(i, j);
  if (c == 0) return -1;
  return label_[static_cast<std::size_t>(i) * r() + (c - 1)];
}

Vertex ReducedGraph::partner(Vertex i) const {
  if (partner_.empty() || i < 0 || i >= t()) return -1;
  return partner_[i];
}

ReducedGraph ReducedGraph::with_matching(std::vector<Edge> matching) const {
  return ReducedGraph(graph_, std::move(matching));
}

ReducedGraph choose_components(const ColoredGraph& g, double delta, double gamma) {
  const int t = g.n();
  const int r = g.r();
  if (!(gamma > 0.0) || gamma > delta) throw ParameterError("choose_components: need 0 < gamma <= delta");
  if (min_degree(g) + 1e-9 < delta * t) {
    throw ParameterError("choose_components: minimum degree below delta*t");
  }
  const ReducedGraph all(g);
  const double keep_size = gamma * t / r;
  GraphBuilder b(t, r);
  for (const Component& comp : all.components()) {
    if (static_cast<double>(comp.vertices.size()) + 1e-9 < keep_size) continue;
    for (const Edge& e : comp.edges) b.add_edge(e.u, e.v, comp.color);
  }
  ReducedGraph out(std::move(b).build());
  if (static_cast<double>(out.components().size()) > r * r / gamma + 1e-9) {
    throw std::logic_error("choose_components: more than r^2/gamma components survived");
  }
  if (min_degree(out.graph()) + 1e-9 < (delta - gamma) * t) {
    throw std::logic_error("choose_components: minimum degree dropped below (delta-gamma)t");
  }
  return out;
}

std::vector<Edge> perfect_matching(const ReducedGraph& reduced) {
  if (reduced.t() % 2 != 0) throw ParameterError("perfect_matching: t must be even");
  auto m = max_matching(SimpleGraph::underlying(reduced.graph()));
  if (static_cast<int>(m.size()) * 2 != reduced.t()) {
    throw InfeasibleError("perfect_matching: R has no perfect matching");
  }
  return m;
}

long long AllocationResult::vertex_count() const {
  return std::accumulate(sizes.begin(), sizes.end(), 0LL);
}

AllocationResult allocate_cycles(const ReducedGraph& reduced, const std::vector<long long>& x,
                                 long long m, const AllocateOptions& options) {
  const int t = reduced.t();
  const auto& comps = reduced.components();
  const int s = static_cast<int>(comps.size());
  if (t < 2 || t % 2 != 0) throw ParameterError("allocate: t must be even and positive");
  if (static_cast<int>(x.size()) != t) throw ParameterError("allocate: need one size per cluster");
  if (reduced.matching().empty()) throw ParameterError("allocate: R needs a perfect matching R'");
  for (long long xi : x) {
    if (xi < 0) throw ParameterError("allocate: negative cluster size");
  }
  const long long total = std::accumulate(x.begin(), x.end(), 0LL);
  if (total > INT_MAX) throw ParameterError("allocate: too many vertices");
  if (options.check_preconditions) {
    if (m < 90LL * t * t * t * s) throw ParameterError("allocate: m < 90 t^3 s");
    if (3 * min_degree(reduced.graph()) < 2 * t) throw ParameterError("allocate: delta(R) < 2t/3");
    for (long long xi : x) {
      if (xi < m || 9 * xi > 10 * m) throw ParameterError("allocate: sizes outside [m, 10m/9]");
    }
  }

  // Global edge index over all components.
  std::vector<std::vector<int>> first(static_cast<std::size_t>(s));
  std::vector<std::vector<Vertex>> walks(static_cast<std::size_t>(s));
  std::vector<int> comp_offset(static_cast<std::size_t>(s) + 1, 0);
  for (int k = 0; k < s; ++k) {
    walks[k] = closed_walk(comps[k], t, first[k]);
    comp_offset[k + 1] = comp_offset[k] + static_cast<int>(comps[k].edges.size());
  }
  const int edge_total = comp_offset[s];
  std::vector<Edge> all_edges;
  for (const auto& comp : comps) all_edges.insert(all_edges.end(), comp.edges.begin(), comp.edges.end());

  std::vector<long long> used(static_cast<std::size_t>(t), 0);
  std::vector<long long> extra(static_cast<std::size_t>(edge_total), 0);
  long long visiting = 0;
  for (int k = 0; k < s; ++k) {
    const auto& w = walks[k];
    for (std::size_t q = 0; q < w.size(); ++q) {
      used[w[q]] += 2;
      used[w[(q + 1) % w.size()]] += 1;
    }
    visiting += 3 * static_cast<long long>(w.size());
  }
  for (int e = 0; e < edge_total; ++e) {
    const Edge& ed = all_edges[e];
    if (reduced.partner(ed.u) != ed.v) continue;
    const long long stretch = ceil_div(4 * m - 180, 90);
    const long long buffer = ceil_div(std::max(x[ed.u], x[ed.v]), 50) + 1;
    extra[e] = std::max(stretch, buffer);
    used[ed.u] += extra[e];
    used[ed.v] += extra[e];
    visiting += 2 * extra[e];
  }
  std::vector<long long> rem(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) {
    rem[i] = x[i] - used[i];
    if (rem[i] < 0) {
      throw InfeasibleError("allocate: cluster " + std::to_string(i) +
                            " is too small for the visiting cycles");
    }
  }

  // Degree-constrained matching on R: f[e] pairs of H-vertices across edge e.
  std::vector<std::vector<std::pair<Vertex, int>>> inc(static_cast<std::size_t>(t));
  std::map<Edge, int> edge_id;
  for (int e = 0; e < edge_total; ++e) {
    inc[all_edges[e].u].push_back({all_edges[e].v, e});
    inc[all_edges[e].v].push_back({all_edges[e].u, e});
    edge_id[all_edges[e]] = e;
  }
  auto id_of = [&](Vertex a, Vertex b) {
    auto it = edge_id.find(Edge{std::min(a, b), std::max(a, b)});
    return it == edge_id.end() ? -1 : it->second;
  };
  std::vector<long long> f(static_cast<std::size_t>(edge_total), 0);
  for (;;) {
    // Greedy: largest remainder with its largest-remainder neighbour.
    int best_i = -1;
    int best_e = -1;
    Vertex best_j = -1;
    std::vector<int> order(static_cast<std::size_t>(t));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rem[a] > rem[b]; });
    for (int i : order) {
      if (rem[i] <= 0) break;
      for (auto [j, e] : inc[i]) {
        if (rem[j] > 0 && (best_j < 0 || rem[j] > rem[best_j])) {
          best_j = j;
          best_e = e;
        }
      }
      if (best_j >= 0) {
        best_i = i;
        break;
      }
    }
    if (best_i < 0) break;
    const long long amount =
        std::max(1LL, std::min(rem[best_i], rem[best_j]) / (4LL * t));
    f[best_e] += amount;
    rem[best_i] -= amount;
    rem[best_j] -= amount;
  }
  // Length-3 augmentations: drop one pair across cd, add pairs across ac and db.
  for (;;) {
    std::vector<Vertex> open;
    long long left = 0;
    for (int i = 0; i < t; ++i) {
      if (rem[i] > 0) open.push_back(i);
      left += rem[i];
    }
    if (left <= 1) break;
    const Vertex a = open.front();
    const Vertex b = open.size() > 1 ? open[1] : a;
    bool done = false;
    for (int e = 0; e < edge_total && !done; ++e) {
      if (f[e] == 0) continue;
      for (int flip = 0; flip < 2 && !done; ++flip) {
        const Vertex c = flip ? all_edges[e].v : all_edges[e].u;
        const Vertex d = flip ? all_edges[e].u : all_edges[e].v;
        const int ac = id_of(a, c);
        const int db = id_of(d, b);
        if (ac < 0 || db < 0) continue;
        --f[e];
        ++f[ac];
        ++f[db];
        --rem[a];
        --rem[b];
        done = true;
      }
    }
    if (!done) throw InfeasibleError("allocate: remainder matching leaves more than one vertex");
  }

  AllocationResult out;
  out.t = t;
  out.sizes = x;
  out.cluster_start.assign(static_cast<std::size_t>(t), 0);
  for (int i = 1; i < t; ++i) out.cluster_start[i] = out.cluster_start[i - 1] + static_cast<Vertex>(x[i - 1]);
  out.cluster_of.resize(static_cast<std::size_t>(total));
  for (int i = 0; i < t; ++i) {
    std::fill_n(out.cluster_of.begin() + out.cluster_start[i], x[i], i);
  }
  std::vector<Vertex> next = out.cluster_start;
  auto take = [&](Vertex i) { return next[i]++; };
  out.buffers.assign(static_cast<std::size_t>(t), {});
  out.visiting_vertices = visiting;

  for (int k = 0; k < s; ++k) {
    const auto& w = walks[k];
    const int L = static_cast<int>(w.size());
    std::vector<int> first_edge_at(static_cast<std::size_t>(L), -1);
    for (std::size_t e = 0; e < first[k].size(); ++e) first_edge_at[first[k][e]] = comp_offset[k] + static_cast<int>(e);
    AllocationCycle cycle{k, comps[k].color, {}};
    struct Span {
      int e;
      std::size_t begin;
      std::size_t length;
    };
    std::vector<Span> spans;
    for (int q = 0; q < L; ++q) {
      const Vertex a = w[q];
      const Vertex b = w[(q + 1) % L];
      const std::size_t begin = cycle.vertices.size();
      cycle.vertices.push_back(take(a));
      cycle.vertices.push_back(take(b));
      long long inserts = 0;
      const int e = first_edge_at[q];
      if (e >= 0) inserts = extra[e] + f[e];
      for (long long z = 0; z < inserts; ++z) {
        cycle.vertices.push_back(take(a));
        cycle.vertices.push_back(take(b));
      }
      cycle.vertices.push_back(take(a));
      if (e >= 0) spans.push_back({e, begin, static_cast<std::size_t>(4 + 2 * inserts)});
    }
    for (const Span& sp : spans) {
      const Edge& ed = all_edges[sp.e];
      if (reduced.partner(ed.u) != ed.v) continue;
      BufferPath path{ed, {}};
      for (std::size_t z = 0; z < sp.length; ++z) {
        path.vertices.push_back(cycle.vertices[(sp.begin + z) % cycle.vertices.size()]);
      }
      for (std::size_t z = 2; z + 3 <= sp.length; ++z) {
        const Vertex v = path.vertices[z];
        out.buffers[out.cluster_of[v]].push_back(v);
      }
      out.matching_paths.push_back(std::move(path));
    }
    out.cycles.push_back(std::move(cycle));
  }
  for (int i = 0; i < t; ++i) {
    if (rem[i] == 1) out.isolated = take(i);
  }
  for (int i = 0; i < t; ++i) {
    if (next[i] != out.cluster_start[i] + x[i]) {
      throw std::logic_error("allocate: cluster " + std::to_string(i) + " not used up exactly");
    }
    std::sort(out.buffers[i].begin(), out.buffers[i].end());
  }
  std::sort(out.matching_paths.begin(), out.matching_paths.end(),
            [](const BufferPath& p, const BufferPath& q) { return p.pair < q.pair; });
  return out;
}

AllocationCheck verify_allocation(const ReducedGraph& reduced, const std::vector<long long>& x,
                                  long long m, const AllocationResult& res) {
  AllocationCheck check;
  auto fail = [&](std::string why) {
    check.valid = false;
    if (check.violations.size() < 50) check.violations.push_back(std::move(why));
  };
  const int t = reduced.t();
  if (res.t != t || res.sizes != x || static_cast<int>(res.cluster_start.size()) != t) {
    fail("(i) sizes do not match the requested x_i");
    return check;
  }
  const long long total = std::accumulate(x.begin(), x.end(), 0LL);
  if (static_cast<long long>(res.cluster_of.size()) != total) {
    fail("(i) vertex count differs from the sum of x_i");
    return check;
  }
  std::vector<long long> count(static_cast<std::size_t>(t), 0);
  for (std::size_t v = 0; v < res.cluster_of.size(); ++v) {
    const int i = res.cluster_of[v];
    if (i < 0 || i >= t) {
      fail("(i) vertex with no cluster");
      return check;
    }
    ++count[i];
  }
  for (int i = 0; i < t; ++i) {
    if (count[i] != x[i]) fail("(i) |X_" + std::to_string(i) + "| != x_" + std::to_string(i));
  }

  const std::size_t n = res.cluster_of.size();
  std::vector<std::array<Vertex, 2>> nb(n, {-1, -1});
  std::vector<char> seen(n, 0);
  auto add_edge = [&](Vertex u, Vertex v) {
    for (Vertex a : {u, v}) {
      const Vertex other = a == u ? v : u;
      if (nb[a][0] < 0) {
        nb[a][0] = other;
      } else if (nb[a][1] < 0 && nb[a][0] != other) {
        nb[a][1] = other;
      } else {
        fail("(iv) degree above 2 or repeated edge at " + std::to_string(a));
      }
    }
  };
  if (static_cast<int>(res.cycles.size()) != static_cast<int>(reduced.components().size())) {
    fail("(iv) need exactly one cycle per component");
  }
  std::vector<std::vector<char>> edge_used(reduced.components().size());
  for (std::size_t k = 0; k < reduced.components().size(); ++k) {
    edge_used[k].assign(reduced.components()[k].edges.size(), 0);
  }
  for (const AllocationCycle& c : res.cycles) {
    const auto& vs = c.vertices;
    if (vs.size() < 3) {
      fail("(iv) cycle shorter than 3");
      continue;
    }
    if (c.component < 0 || c.component >= static_cast<int>(reduced.components().size())) {
      fail("(iv) cycle with unknown component");
      continue;
    }
    const Component& comp = reduced.components()[c.component];
    for (std::size_t q = 0; q < vs.size(); ++q) {
      const Vertex u = vs[q];
      const Vertex v = vs[(q + 1) % vs.size()];
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
        fail("(iv) vertex id out of range");
        continue;
      }
      if (seen[u]++) fail("(iv) cycles share vertex " + std::to_string(u));
      add_edge(u, v);
      const int i = res.cluster_of[u];
      const int j = res.cluster_of[v];
      if (reduced.component_of(i, j) != c.component) {
        fail("(iv) H-edge between X_" + std::to_string(i) + " and X_" + std::to_string(j) +
             " is not an edge of its R_k");
        continue;
      }
      const Edge key{std::min(i, j), std::max(i, j)};
      const auto it = std::lower_bound(comp.edges.begin(), comp.edges.end(), key);
      edge_used[c.component][it - comp.edges.begin()] = 1;
    }
  }
  for (std::size_t k = 0; k < edge_used.size(); ++k) {
    for (char u : edge_used[k]) {
      if (!u) fail("(iv) some edge of R_" + std::to_string(k) + " is not used by C_k");
    }
  }
  if (res.isolated) {
    const Vertex v = *res.isolated;
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]++) fail("(iv) bad isolated vertex");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) {
      fail("(iv) vertex " + std::to_string(v) + " neither on a cycle nor the isolated vertex");
      break;
    }
  }

  // (ii) In a graph of maximum degree 2 a triangle is a vertex whose two
  // neighbours are adjacent.
  for (std::size_t v = 0; v < n; ++v) {
    const Vertex a = nb[v][0];
    const Vertex b = nb[v][1];
    if (a >= 0 && b >= 0 && (nb[a][0] == b || nb[a][1] == b)) {
      fail("(ii) triangle at " + std::to_string(v));
      break;
    }
  }

  // (iii) buffer.
  if (static_cast<int>(res.buffers.size()) != t) {
    fail("(iii) need one buffer set per cluster");
  } else {
    for (int i = 0; i < t; ++i) {
      const auto& buf = res.buffers[i];
      if (50 * static_cast<long long>(buf.size()) < x[i]) {
        fail("(iii) |X~_" + std::to_string(i) + "| < |X_" + std::to_string(i) + "|/50");
      }
      for (Vertex v : buf) {
        if (v < 0 || static_cast<std::size_t>(v) >= n || res.cluster_of[v] != i) {
          fail("(iii) buffer vertex outside its cluster");
          continue;
        }
        for (Vertex y : nb[v]) {
          if (y < 0) continue;
          const int j = res.cluster_of[y];
          if (reduced.partner(i) != j) fail("(iii) first neighbourhood leaves R'");
          for (Vertex z : nb[y]) {
            if (z >= 0 && reduced.partner(j) != res.cluster_of[z]) {
              fail("(iii) second neighbourhood leaves R'");
            }
          }
        }
      }
    }
  }

  // R' paths.
  std::map<Edge, int> paths;
  for (const BufferPath& p : res.matching_paths) {
    ++paths[p.pair];
    const auto& vs = p.vertices;
    if (vs.empty() || (res.cluster_of[vs[0]] != p.pair.u && res.cluster_of[vs[0]] != p.pair.v)) {
      fail("P_ij does not start in X_i or X_j");
      continue;
    }
    if (45 * static_cast<long long>(vs.size()) < 4 * m) fail("P_ij has fewer than 4m/45 vertices");
    for (std::size_t q = 0; q < vs.size(); ++q) {
      const Vertex v = vs[q];
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        fail("P_ij vertex out of range");
        break;
      }
      const int want = q % 2 == 0 ? res.cluster_of[vs[0]] : (res.cluster_of[vs[0]] == p.pair.u ? p.pair.v : p.pair.u);
      if (res.cluster_of[v] != want) fail("P_ij does not alternate between X_i and X_j");
      if (q + 1 < vs.size() && nb[v][0] != vs[q + 1] && nb[v][1] != vs[q + 1]) {
        fail("P_ij step is not an H-edge");
      }
    }
  }
  for (const Edge& e : reduced.matching()) {
    if (paths[e] != 1) fail("R' edge without exactly one path P_ij");
  }
  return check;
}

}  // namespace mcp
