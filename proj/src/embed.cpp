#include "mcp/embed.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcp/errors.hpp"
#include "mcp/rng.hpp"

namespace mcp {

Blueprint Blueprint::from(const AllocationResult& allocation) {
  return Blueprint{allocation.cluster_of, allocation.cycles, allocation.isolated};
}

int Blueprint::clusters() const {
  int t = 0;
  for (int c : cluster_of) t = std::max(t, c + 1);
  return t;
}

namespace {

struct Run {
  std::size_t cycle = 0;
  std::size_t before = 0;  // fixed ends, indices into the layout
  std::size_t after = 0;
  std::vector<std::size_t> interior;
};

struct Layout {
  std::vector<Vertex> pos;
  Color color = 0;
  bool rigid = false;  // no long run: embedded as a closed cycle
  std::vector<std::pair<std::size_t, std::size_t>> segments;  // [a, b)
};

class Embedder {
 public:
  Embedder(const Blueprint& h, const ColoredGraph& g, const std::vector<VertexSet>& clusters,
           const EmbedOptions& options)
      : h_(h), g_(g), options_(options) {
    for (const auto& c : clusters) cluster_masks_.push_back(c.mask(g.n()));
    for (std::size_t k = 0; k < h.cycles.size(); ++k) prepare(k);
    std::stable_sort(runs_.begin(), runs_.end(), [](const Run& a, const Run& b) {
      return a.interior.size() < b.interior.size();
    });
  }

  EmbedResult run() {
    EmbedResult res;
    for (int attempt = 0; attempt <= options_.restarts; ++attempt) {
      ++res.attempts;
      rng_ = Rng::stream(options_.seed, static_cast<std::uint64_t>(attempt), "embed");
      std::string why;
      const bool ok = attempt_once(why);
      res.rotations = rotations_;
      res.nodes = nodes_;
      if (ok) {
        res.success = true;
        res.psi = psi_;
        for (std::size_t k = 0; k < h_.cycles.size(); ++k) {
          Cycle img{h_.cycles[k].color, {}};
          for (Vertex v : h_.cycles[k].vertices) img.vertices.push_back(psi_[v]);
          if (img.vertices.size() == 1) img.color = 0;
          res.cover.cycles.push_back(std::move(img));
        }
        if (h_.isolated) res.cover.cycles.push_back(vertex_cycle(psi_[*h_.isolated]));
        self_check(res);
        return res;
      }
      res.failure = why;
      if (nodes_ >= options_.node_limit) {
        res.failure += " (node limit reached)";
        break;
      }
    }
    return res;
  }

 private:
  int cl(Vertex hv) const { return h_.cluster_of[hv]; }
  bool adj(Vertex a, Vertex b, Color c) const { return g_.neighbors(a, c)[b]; }
  bool tick() { return ++nodes_ <= options_.node_limit; }

  // Splits cycle k into rigid segments and run interiors. A position is
  // interior when its two neighbours share a cluster other than its own;
  // maximal interior stretches of length ≥ min_run become runs.
  void prepare(std::size_t k) {
    Layout lay;
    lay.color = h_.cycles[k].color;
    lay.pos = h_.cycles[k].vertices;
    const std::size_t L = lay.pos.size();
    std::vector<char> alt(L, 0);
    if (L >= 4) {
      for (std::size_t q = 0; q < L; ++q) {
        const int a = cl(lay.pos[(q + L - 1) % L]);
        const int b = cl(lay.pos[q]);
        const int c = cl(lay.pos[(q + 1) % L]);
        alt[q] = a == c && a != b;
      }
    }
    const auto all_alt = std::all_of(alt.begin(), alt.end(), [](char x) { return x != 0; });
    if (L >= 4 && all_alt) {
      // A two-cluster cycle: pin position 0, the rest is one run.
      if (static_cast<int>(L) - 1 >= options_.min_run) {
        lay.segments.push_back({0, 1});
        Run run{k, 0, 0, {}};
        for (std::size_t q = 1; q < L; ++q) run.interior.push_back(q);
        runs_.push_back(std::move(run));
      } else {
        lay.rigid = true;
      }
      layouts_.push_back(std::move(lay));
      return;
    }
    // Keep only long stretches.
    std::vector<char> inner(L, 0);
    if (L >= 4) {
      std::size_t s0 = 0;
      while (alt[s0]) ++s0;
      for (std::size_t step = 0; step < L;) {
        const std::size_t q = (s0 + step) % L;
        if (!alt[q]) {
          ++step;
          continue;
        }
        std::size_t len = 0;
        while (step + len < L && alt[(s0 + step + len) % L]) ++len;
        if (static_cast<int>(len) >= options_.min_run) {
          for (std::size_t e = 0; e < len; ++e) inner[(s0 + step + e) % L] = 1;
        }
        step += len;
      }
    }
    std::size_t start = L;
    for (std::size_t q = 0; q < L; ++q) {
      if (!inner[q] && inner[(q + L - 1) % L]) {
        start = q;
        break;
      }
    }
    if (start == L) {
      lay.rigid = true;
      layouts_.push_back(std::move(lay));
      return;
    }
    std::rotate(lay.pos.begin(), lay.pos.begin() + static_cast<long>(start), lay.pos.end());
    std::rotate(inner.begin(), inner.begin() + static_cast<long>(start), inner.end());
    for (std::size_t q = 0; q < L;) {
      std::size_t e = q;
      while (e < L && inner[e] == inner[q]) ++e;
      if (inner[q]) {
        Run run{k, q - 1, e % L, {}};
        for (std::size_t x = q; x < e; ++x) run.interior.push_back(x);
        runs_.push_back(std::move(run));
      } else {
        lay.segments.push_back({q, e});
      }
      q = e;
    }
    layouts_.push_back(std::move(lay));
  }

  bool attempt_once(std::string& why) {
    free_ = cluster_masks_;
    psi_.assign(h_.cluster_of.size(), -1);
    img_.assign(layouts_.size(), {});
    for (std::size_t k = 0; k < layouts_.size(); ++k) img_[k].assign(layouts_[k].pos.size(), -1);

    for (std::size_t k = 0; k < layouts_.size(); ++k) {
      const Layout& lay = layouts_[k];
      if (lay.rigid && !place(k, 0, lay.pos.size(), true)) {
        why = "cycle " + std::to_string(k) + " could not be embedded";
        return false;
      }
    }
    for (std::size_t k = 0; k < layouts_.size(); ++k) {
      for (const auto& [a, b] : layouts_[k].segments) {
        if (!place(k, a, b, false)) {
          why = "cycle " + std::to_string(k) + " could not be embedded";
          return false;
        }
      }
    }
    for (const Run& run : runs_) {
      bool ok = false;
      for (int tries = 0; tries < options_.run_retries && !ok; ++tries) ok = fill(run);
      if (!ok) {
        why = "cycle " + std::to_string(run.cycle) + " could not be embedded (run of " +
              std::to_string(run.interior.size()) + ")";
        return false;
      }
    }
    for (std::size_t k = 0; k < layouts_.size(); ++k) {
      for (std::size_t q = 0; q < layouts_[k].pos.size(); ++q) psi_[layouts_[k].pos[q]] = img_[k][q];
    }
    if (h_.isolated) {
      const int c = cl(*h_.isolated);
      const auto pos = free_[c].find_first();
      if (pos == Bitset::npos) {
        why = "no vertex left for the isolated vertex";
        return false;
      }
      psi_[*h_.isolated] = static_cast<Vertex>(pos);
      free_[c].reset(pos);
    }
    return true;
  }

  // Free vertices for position q of layout k, fewest onward options first
  // with dead ends last. `left` precedes position a and `right` must follow
  // position b-1 (either may be -1); the last two positions look at `right`.
  std::vector<Vertex> candidates(std::size_t k, std::size_t a, std::size_t b, std::size_t q,
                                 Vertex left, Vertex right) {
    const Layout& lay = layouts_[k];
    const auto& img = img_[k];
    const Color col = lay.color;
    Bitset mask = free_[cl(lay.pos[q])];
    const Vertex prev = q > a ? img[q - 1] : left;
    if (prev >= 0) mask &= g_.neighbors(prev, col);
    if (right >= 0 && q + 1 == b) mask &= g_.neighbors(right, col);
    const int next_c = q + 1 < b ? cl(lay.pos[q + 1]) : -1;
    std::vector<std::pair<std::uint64_t, Vertex>> keyed;
    for (auto v = mask.find_first(); v != Bitset::npos; v = mask.find_next(v)) {
      const Vertex u = static_cast<Vertex>(v);
      std::uint64_t onward = 0;
      if (next_c >= 0) {
        Bitset nxt = free_[next_c] & g_.neighbors(u, col);
        if (right >= 0 && q + 2 == b) {
          nxt &= g_.neighbors(right, col);
          nxt.reset(v);
          if (nxt.none()) continue;
        }
        onward = nxt.count();
      }
      const std::uint64_t dead = (next_c >= 0 && onward == 0) ? 1 : 0;
      keyed.push_back({(dead << 62) | (onward << 20) | (rng_() & 0xFFFFF), u});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<Vertex> out;
    out.reserve(keyed.size());
    for (auto& kv : keyed) out.push_back(kv.second);
    return out;
  }

  // Chronological backtracking over positions [a, b) of layout k. A closed
  // span wraps around onto img[a].
  bool place(std::size_t k, std::size_t a, std::size_t b, bool closed, Vertex left = -1,
             Vertex right = -1) {
    const Layout& lay = layouts_[k];
    auto& img = img_[k];
    const std::size_t span = b - a;
    long long budget = 200 * static_cast<long long>(span) + 20000;
    std::vector<std::vector<Vertex>> cands(span);
    std::vector<std::size_t> next(span, 0);
    std::size_t q = a;
    bool fresh = true;
    while (q < b) {
      if (!tick() || --budget < 0) break;
      const std::size_t i = q - a;
      if (fresh) {
        cands[i] = candidates(k, a, b, q, left, closed ? (q > a ? img[a] : -1) : right);
        next[i] = 0;
      }
      const int c = cl(lay.pos[q]);
      bool placed = false;
      while (next[i] < cands[i].size()) {
        const Vertex v = cands[i][next[i]++];
        if (!free_[c][v]) continue;
        img[q] = v;
        free_[c].reset(v);
        placed = true;
        break;
      }
      if (placed) {
        ++q;
        fresh = true;
        continue;
      }
      if (q == a) break;
      --q;
      free_[cl(lay.pos[q])].set(img[q]);
      img[q] = -1;
      fresh = false;
    }
    if (q == b) return true;
    for (std::size_t x = a; x < q; ++x) {
      free_[cl(lay.pos[x])].set(img[x]);
      img[x] = -1;
    }
    return false;
  }

  // Path x, s_1..s_l, y through the run's clusters. Short runs are found by
  // backtracking. Long ones grow by greedy extension; when stuck, a
  // breadth-first search over Pósa rotations (x pinned) looks for an end that
  // extends, or at full length one adjacent to y. Failing that the end is
  // dropped.
  bool fill(const Run& run) {
    const Layout& lay = layouts_[run.cycle];
    auto& img = img_[run.cycle];
    const Color col = lay.color;
    const std::size_t l = run.interior.size();
    if (l <= kShortRun) {
      return place(run.cycle, run.interior.front(), run.interior.back() + 1, false,
                   img[run.before], img[run.after]);
    }
    std::vector<int> want(l + 2);
    want[0] = cl(lay.pos[run.before]);
    for (std::size_t m = 1; m <= l; ++m) want[m] = cl(lay.pos[run.interior[m - 1]]);
    want[l + 1] = cl(lay.pos[run.after]);
    repair(want[1], want[2], col);
    repair(want[2], want[1], col);

    const Vertex x = img[run.before];
    const Vertex y = img[run.after];
    auto usable = [&](Vertex end, std::size_t k) {
      if (k == l) return adj(end, y, col);
      return (free_[want[k + 1]] & g_.neighbors(end, col)).any();
    };
    std::vector<Vertex> s{x};
    long long budget = 40 * static_cast<long long>(l) + 400;
    bool ok = false;
    while (--budget >= 0 && tick()) {
      const std::size_t k = s.size() - 1;
      if (k == l && adj(s[k], y, col)) {
        ok = true;
        break;
      }
      if (k < l) {
        const Bitset m = free_[want[k + 1]] & g_.neighbors(s[k], col);
        Vertex best = -1;
        std::uint64_t best_key = ~std::uint64_t{0};
        for (auto v = m.find_first(); v != Bitset::npos; v = m.find_next(v)) {
          std::uint64_t onward = 0;
          if (k + 2 < l) {
            onward = intersect_count(g_.neighbors(static_cast<Vertex>(v), col), free_[want[k + 2]]);
          } else if (k + 2 == l) {
            onward = (free_[want[l]] & g_.neighbors(static_cast<Vertex>(v), col) &
                      g_.neighbors(y, col))
                         .count();
          }
          const bool dead = k + 2 <= l ? onward == 0 : !adj(static_cast<Vertex>(v), y, col);
          const std::uint64_t key =
              (std::uint64_t{dead} << 62) | (onward << 20) | (rng_() & 0xFFFFF);
          if (key < best_key) {
            best_key = key;
            best = static_cast<Vertex>(v);
          }
        }
        if (best >= 0) {
          s.push_back(best);
          free_[want[k + 1]].reset(best);
          continue;
        }
      }
      if (rotate_search(s, col, [&](Vertex end) { return usable(end, k); })) continue;
      if (k == 0) break;
      free_[want[k]].set(s.back());
      s.pop_back();
    }
    if (!ok) {
      for (std::size_t m = 1; m < s.size(); ++m) free_[want[m]].set(s[m]);
      return false;
    }
    for (std::size_t m = 1; m <= l; ++m) img[run.interior[m - 1]] = s[m];
    return true;
  }

  // A free vertex of cluster a with at most one colour-`col` neighbour among
  // the free vertices of b cannot sit inside a path through the pool. Swap
  // it with a placed vertex of a that has ≥ 3 such neighbours and whose
  // placed layout neighbours accept it.
  void repair(int a, int b, Color col) {
    const Bitset low_pool = free_[a];
    for (auto v = low_pool.find_first(); v != Bitset::npos; v = low_pool.find_next(v)) {
      const Vertex u = static_cast<Vertex>(v);
      if (intersect_count(g_.neighbors(u, col), free_[b]) > 1) continue;
      bool done = false;
      for (std::size_t k = 0; k < layouts_.size() && !done; ++k) {
        const Layout& lay = layouts_[k];
        auto& img = img_[k];
        const std::size_t L = lay.pos.size();
        if (L < 3) continue;
        for (std::size_t q = 0; q < L && !done; ++q) {
          const Vertex w = img[q];
          if (w < 0 || cl(lay.pos[q]) != a) continue;
          if (!tick()) return;
          const Vertex prev = img[(q + L - 1) % L];
          const Vertex next = img[(q + 1) % L];
          if (prev >= 0 && !adj(u, prev, lay.color)) continue;
          if (next >= 0 && !adj(u, next, lay.color)) continue;
          if (intersect_count(g_.neighbors(w, col), free_[b]) < 3) continue;
          img[q] = u;
          free_[a].reset(v);
          free_[a].set(w);
          done = true;
        }
      }
    }
  }

  // Breadth-first over rotations of s with s[0] pinned: s[q] ~ end with q of
  // the other cluster, reverse s[q+1..]. Ends are visited once. On success s
  // is replaced by a path whose end satisfies `good`.
  template <class Good>
  bool rotate_search(std::vector<Vertex>& s, Color col, Good good) {
    const std::size_t k = s.size() - 1;
    if (k < 3) return false;
    std::vector<std::vector<Vertex>> queue{s};
    std::vector<Vertex> seen{s[k]};
    for (std::size_t head = 0; head < queue.size() && queue.size() < kRotationStates; ++head) {
      std::vector<std::size_t> pivots;
      for (std::size_t q = (k - 1) % 2; q + 2 <= k; q += 2) {
        if (adj(queue[head][q], queue[head][k], col)) pivots.push_back(q);
      }
      rng_.shuffle(pivots);
      for (std::size_t q : pivots) {
        if (!tick()) return false;
        const Vertex end = queue[head][q + 1];
        if (std::find(seen.begin(), seen.end(), end) != seen.end()) continue;
        seen.push_back(end);
        std::vector<Vertex> next = queue[head];
        std::reverse(next.begin() + static_cast<long>(q) + 1, next.end());
        if (good(end)) {
          s = std::move(next);
          ++rotations_;
          return true;
        }
        queue.push_back(std::move(next));
      }
    }
    return false;
  }

  static constexpr std::size_t kShortRun = 16;
  static constexpr std::size_t kRotationStates = 400;

  void self_check(const EmbedResult& res) const {
    std::vector<char> used(static_cast<std::size_t>(g_.n()), 0);
    for (std::size_t v = 0; v < res.psi.size(); ++v) {
      const Vertex x = res.psi[v];
      if (x < 0 || used[x]++ || !cluster_masks_[h_.cluster_of[v]][x]) {
        throw std::logic_error("embed: image is not a per-cluster bijection");
      }
    }
    for (const auto& c : h_.cycles) {
      for (std::size_t q = 0; q < c.vertices.size(); ++q) {
        const Vertex a = res.psi[c.vertices[q]];
        const Vertex b = res.psi[c.vertices[(q + 1) % c.vertices.size()]];
        if (c.vertices.size() > 1 && g_.color(a, b) != c.color) {
          throw std::logic_error("embed: H-edge not mapped to a host edge of its colour");
        }
      }
    }
  }

  const Blueprint& h_;
  const ColoredGraph& g_;
  EmbedOptions options_;
  std::vector<Bitset> cluster_masks_;
  std::vector<Layout> layouts_;
  std::vector<Run> runs_;
  std::vector<Bitset> free_;
  std::vector<std::vector<Vertex>> img_;
  std::vector<Vertex> psi_;
  Rng rng_;
  long long nodes_ = 0;
  int rotations_ = 0;
};

}  // namespace

EmbedResult embed_blueprint(const Blueprint& h, const ColoredGraph& g,
                            const std::vector<VertexSet>& clusters, const EmbedOptions& options) {
  if (options.min_run < 1 || options.run_retries < 1 || options.restarts < 0 ||
      options.node_limit < 1) {
    throw ParameterError("embed: min_run, run_retries and node_limit must be positive");
  }
  const int t = static_cast<int>(clusters.size());
  std::vector<long long> count(static_cast<std::size_t>(t), 0);
  for (int c : h.cluster_of) {
    if (c < 0 || c >= t) throw ParameterError("embed: H-vertex in an unknown cluster");
    ++count[c];
  }
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (int i = 0; i < t; ++i) {
    clusters[i].check_range(g.n());
    if (count[i] != static_cast<long long>(clusters[i].size())) {
      throw ParameterError("embed: |X_" + std::to_string(i) + "| != |V_" + std::to_string(i) + "|");
    }
    for (Vertex v : clusters[i]) {
      if (seen[v]++) throw ParameterError("embed: host clusters overlap");
    }
  }
  for (const auto& c : h.cycles) {
    if (c.color < 1 || c.color > g.r()) throw ParameterError("embed: cycle colour out of range");
    for (Vertex v : c.vertices) {
      if (v < 0 || static_cast<std::size_t>(v) >= h.cluster_of.size()) {
        throw ParameterError("embed: cycle vertex out of range");
      }
    }
  }
  return Embedder(h, g, clusters, options).run();
}

}  // namespace mcp
