#pragma once

// Slow reference implementations used to cross-check the library. Nothing
// here calls into the code under test except Graph accessors.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "ercp/graph.hpp"
#include "ercp/random.hpp"

namespace oracle {

using ercp::Edge;
using ercp::Graph;
using ercp::Vertex;

/// Component sizes (descending) and a canonical per-vertex label (the smallest
/// vertex of the component), by breadth-first search on an edge list.
struct Partition {
  std::vector<std::uint64_t> sizes;
  std::vector<Vertex> rep;
};

inline Partition bfs_components(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (auto e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  Partition p;
  p.rep.assign(n, static_cast<Vertex>(n));
  for (Vertex s = 0; s < n; ++s) {
    if (p.rep[s] != n) continue;
    std::uint64_t size = 0;
    std::queue<Vertex> q;
    q.push(s);
    p.rep[s] = s;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      ++size;
      for (Vertex w : adj[v])
        if (p.rep[w] == n) {
          p.rep[w] = s;
          q.push(w);
        }
    }
    p.sizes.push_back(size);
  }
  std::sort(p.sizes.rbegin(), p.sizes.rend());
  return p;
}

/// Adjacency bitmasks for graphs with at most 64 vertices.
inline std::vector<std::uint64_t> masks(const Graph& g) {
  std::vector<std::uint64_t> m(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) {
    m[e.u] |= std::uint64_t{1} << e.v;
    m[e.v] |= std::uint64_t{1} << e.u;
  }
  return m;
}

inline bool mask_connected(const std::vector<std::uint64_t>& adj, std::uint64_t set) {
  if (set == 0) return false;
  std::uint64_t reached = set & (~set + 1);
  while (true) {
    std::uint64_t next = reached;
    for (std::uint64_t r = reached; r != 0; r &= r - 1) next |= adj[std::countr_zero(r)] & set;
    if (next == reached) break;
    reached = next;
  }
  return reached == set;
}

inline std::uint64_t mask_boundary(const std::vector<std::uint64_t>& adj, std::uint64_t set) {
  std::uint64_t b = 0;
  for (std::uint64_t r = set; r != 0; r &= r - 1) b += std::popcount(adj[std::countr_zero(r)] & ~set);
  return b;
}

inline std::uint64_t mask_external(const std::vector<std::uint64_t>& adj, std::uint64_t set) {
  std::uint64_t out = 0;
  for (std::uint64_t r = set; r != 0; r &= r - 1) out |= adj[std::countr_zero(r)];
  return static_cast<std::uint64_t>(std::popcount(out & ~set));
}

/// Every connected vertex set of size <= k_max, as bitmasks, from a scan of all 2^n subsets.
inline std::vector<std::uint64_t> connected_subsets(const Graph& g, std::size_t k_max) {
  const auto adj = masks(g);
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << g.num_vertices();
  for (std::uint64_t s = 1; s < total; ++s)
    if (static_cast<std::size_t>(std::popcount(s)) <= k_max && mask_connected(adj, s)) out.push_back(s);
  return out;
}

inline std::uint64_t to_mask(std::span<const Vertex> members) {
  std::uint64_t m = 0;
  for (Vertex v : members) m |= std::uint64_t{1} << v;
  return m;
}

/// Minimum of e(U,U^C)/|U| over 1 <= |U| <= n/2.
inline double p1_minimum(const Graph& g) {
  const auto adj = masks(g);
  const std::size_t n = g.num_vertices();
  double best = 1e300;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (2 * size > n) continue;
    best = std::min(best, static_cast<double>(mask_boundary(adj, s)) / static_cast<double>(size));
  }
  return best;
}

/// Minima over connected U with |U| <= k_max of |N(U)|/(d|U|) and e(U,U^C)/(d|U|).
struct SmallSetMinima {
  double vertex_ratio = 1e300;
  double edge_ratio = 1e300;
};

inline SmallSetMinima small_set_minima(const Graph& g, std::size_t k_max, double d) {
  const auto adj = masks(g);
  SmallSetMinima m;
  for (std::uint64_t s : connected_subsets(g, k_max)) {
    const double size = std::popcount(s);
    m.vertex_ratio = std::min(m.vertex_ratio, static_cast<double>(mask_external(adj, s)) / (d * size));
    m.edge_ratio = std::min(m.edge_ratio, static_cast<double>(mask_boundary(adj, s)) / (d * size));
  }
  return m;
}

/// Subtrees on k vertices containing v: every (k-1)-edge subset that is acyclic,
/// touches v when k > 1, and spans exactly k vertices.
inline std::uint64_t rooted_trees_by_edge_subsets(const Graph& g, Vertex v, std::size_t k) {
  if (k == 1) return 1;
  const auto edges = g.edges();
  const std::size_t need = k - 1;
  std::uint64_t count = 0;
  std::vector<std::size_t> pick(need);
  // Lexicographic combinations of edge indices.
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  if (edges.size() < need) return 0;
  while (true) {
    std::vector<Vertex> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    std::set<Vertex> touched;
    for (std::size_t i : pick) {
      const Edge e = edges[i];
      touched.insert(e.u);
      touched.insert(e.v);
      const Vertex a = find(e.u), b = find(e.v);
      if (a == b) {
        acyclic = false;
        break;
      }
      parent[a] = b;
    }
    // An acyclic forest with k-1 edges on k vertices is a tree.
    if (acyclic && touched.size() == k && touched.count(v)) ++count;
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == edges.size() - need + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return count;
}

/// Maximum matching by exhaustive search over edges (small edge lists only).
inline std::size_t brute_max_matching(const std::vector<Edge>& edges) {
  std::size_t best = 0;
  std::vector<char> used;
  std::map<Vertex, std::size_t> id;
  for (auto e : edges) {
    id.try_emplace(e.u, id.size());
    id.try_emplace(e.v, id.size());
  }
  used.assign(id.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t size) -> void {
    if (size + (edges.size() - i) <= best) return;
    if (i == edges.size()) {
      best = std::max(best, size);
      return;
    }
    const std::size_t a = id[edges[i].u], b = id[edges[i].v];
    if (!used[a] && !used[b]) {
      used[a] = used[b] = 1;
      self(self, i + 1, size + 1);
      used[a] = used[b] = 0;
    }
    self(self, i + 1, size);
  };
  rec(rec, 0, 0);
  return best;
}

/// Isomorphism classes of graphs on n <= 8 vertices, as edge bitmasks over the
/// pairs (i, j), i < j, in lexicographic order.
class SmallGraphCatalog {
 public:
  static std::vector<std::vector<Edge>> all_graphs(std::size_t n, bool connected_only) {
    std::vector<std::uint32_t> level{0};  // n = 1: empty graph
    for (std::size_t k = 2; k <= n; ++k) {
      std::set<std::uint32_t> next;
      for (std::uint32_t g : level) {
        for (std::uint32_t nb = 0; nb < (1U << (k - 1)); ++nb) {
          std::vector<std::uint32_t> adj = decode(g, k - 1);
          adj.push_back(0);
          for (std::size_t i = 0; i + 1 < k; ++i)
            if (nb >> i & 1U) {
              adj[i] |= 1U << (k - 1);
              adj[k - 1] |= 1U << i;
            }
          next.insert(canonical(adj));
        }
      }
      level.assign(next.begin(), next.end());
    }
    if (n == 0) return {};
    std::vector<std::vector<Edge>> out;
    for (std::uint32_t code : level) {
      const auto adj = decode(code, n);
      if (connected_only) {
        std::vector<std::uint64_t> m(adj.begin(), adj.end());
        if (!mask_connected(m, (std::uint64_t{1} << n) - 1)) continue;
      }
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (adj[i] >> j & 1U) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
      out.push_back(std::move(edges));
    }
    return out;
  }

 private:
  static std::size_t pair_index(std::size_t i, std::size_t j) { return j * (j - 1) / 2 + i; }  // i < j

  static std::vector<std::uint32_t> decode(std::uint32_t code, std::size_t n) {
    std::vector<std::uint32_t> adj(n, 0);
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (code >> pair_index(i, j) & 1U) {
          adj[i] |= 1U << j;
          adj[j] |= 1U << i;
        }
    return adj;
  }

  static std::uint32_t encode(const std::vector<std::uint32_t>& adj, const std::vector<std::size_t>& perm) {
    // perm[new] = old; pair_index keeps codes of a smaller graph valid in a larger one.
    std::uint32_t code = 0;
    const std::size_t n = adj.size();
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (adj[perm[i]] >> perm[j] & 1U) code |= 1U << pair_index(i, j);
    return code;
  }

  /// Minimum code over vertex orders consistent with the stable color-refinement
  /// partition; refinement is isomorphism-invariant, so this is a canonical form.
  static std::uint32_t canonical(const std::vector<std::uint32_t>& adj) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> color(n, 0);
    while (true) {
      std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sig(n);
      for (std::size_t v = 0; v < n; ++v) {
        sig[v].first = color[v];
        for (std::size_t w = 0; w < n; ++w)
          if (adj[v] >> w & 1U) sig[v].second.push_back(color[w]);
        std::sort(sig[v].second.begin(), sig[v].second.end());
      }
      std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
      for (const auto& s : sig) ids.emplace(s, 0);
      std::size_t next_id = 0;
      for (auto& [k, id] : ids) id = next_id++;
      std::vector<std::size_t> refined(n);
      for (std::size_t v = 0; v < n; ++v) refined[v] = ids[sig[v]];
      const bool stable = ids.size() == std::set<std::size_t>(color.begin(), color.end()).size();
      color = refined;
      if (stable) break;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return color[a] < color[b]; });
    // Permute within each color class.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j < n && color[order[j]] == color[order[i]]) ++j;
      blocks.emplace_back(i, j);
      i = j;
    }
    std::uint32_t best = UINT32_MAX;
    auto rec = [&](auto&& self, std::size_t b) -> void {
      if (b == blocks.size()) {
        best = std::min(best, encode(adj, order));
        return;
      }
      auto first = order.begin() + static_cast<std::ptrdiff_t>(blocks[b].first);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(blocks[b].second);
      std::sort(first, last);
      do {
        self(self, b + 1);
      } while (std::next_permutation(first, last));
    };
    rec(rec, 0);
    return best;
  }
};

/// G(n, p) edge list from a seeded engine.
inline std::vector<Edge> random_edges(std::size_t n, double p, ercp::Engine& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (ercp::uniform01(rng) < p) edges.push_back({u, v});
  return edges;
}

/// Branching-process survival by plain fixed-point iteration y <- 1 - exp(-(1+eps) y).
inline double fixed_point_survival(double eps, int iterations = 200000) {
  double y = 0.5;
  for (int i = 0; i < iterations; ++i) {
    const double next = 1.0 - std::exp(-(1.0 + eps) * y);
    if (std::abs(next - y) < 1e-16) return next;
    y = next;
  }
  return y;
}

}  // namespace oracle
