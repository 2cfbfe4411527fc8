#include "ercp/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "ercp/error.hpp"
#include "ercp/random.hpp"

namespace ercp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

class Blossom {
 public:
  Blossom(std::size_t n, const std::vector<std::vector<std::size_t>>& adj)
      : n_(n), adj_(adj), match_(n, kNone), parent_(n), base_(n), used_(n), blossom_(n) {}

  std::size_t solve() {
    // Greedy maximal matching first.
    for (std::size_t v = 0; v < n_; ++v)
      if (match_[v] == kNone)
        for (std::size_t w : adj_[v])
          if (match_[w] == kNone) {
            match_[v] = w;
            match_[w] = v;
            break;
          }
    for (std::size_t v = 0; v < n_; ++v)
      if (match_[v] == kNone) {
        std::size_t end = find_path(v);
        while (end != kNone) {
          const std::size_t pv = parent_[end];
          const std::size_t next = match_[pv];
          match_[end] = pv;
          match_[pv] = end;
          end = next;
        }
      }
    std::size_t size = 0;
    for (std::size_t v = 0; v < n_; ++v)
      if (match_[v] != kNone && v < match_[v]) ++size;
    return size;
  }

 private:
  std::size_t lca(std::size_t a, std::size_t b) {
    std::vector<char> seen(n_, 0);
    while (true) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == kNone) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(std::size_t v, std::size_t b, std::size_t child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  std::size_t find_path(std::size_t root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    std::iota(base_.begin(), base_.end(), std::size_t{0});
    used_[root] = 1;
    std::queue<std::size_t> q;
    q.push(root);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
          const std::size_t cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (std::size_t i = 0; i < n_; ++i)
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (match_[to] == kNone) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return kNone;
  }

  std::size_t n_;
  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_, parent_, base_;
  std::vector<char> used_, blossom_;
};

}  // namespace

std::size_t maximum_matching_size(std::size_t n, std::span<const Edge> edges) {
  // Compact to the vertices that carry an edge.
  std::unordered_map<Vertex, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> local;
  local.reserve(edges.size());
  auto id = [&](Vertex v) {
    if (v >= n) throw InvalidInput("matching edge endpoint out of range");
    return index.try_emplace(v, index.size()).first->second;
  };
  for (const Edge& e : edges) {
    if (e.u == e.v) throw InvalidInput("self-loop in matching input");
    const std::size_t a = id(e.u);
    const std::size_t b = id(e.v);
    local.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  std::vector<std::vector<std::size_t>> adj(index.size());
  for (auto [a, b] : local) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return Blossom(index.size(), adj).solve();
}

MatchingTrialReport percolated_matching_trial(const Graph& g, std::span<const EdgeId> f, double q, std::uint64_t seed,
                                              std::uint64_t trials) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("q must lie in [0, 1]");
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  std::vector<Edge> endpoints;
  endpoints.reserve(f.size());
  for (EdgeId e : f) endpoints.push_back(g.edge(e));

  MatchingTrialReport r;
  r.q = q;
  r.d = static_cast<double>(g.regular_degree().value_or(g.max_degree()));
  r.delta = q * r.d;
  r.f_size = f.size();
  r.trials = trials;
  r.bound = r.d > 0 ? r.delta * r.delta * static_cast<double>(f.size()) / r.d : 0.0;
  r.failure_bound = std::exp(-r.bound);
  r.min_size = kNone;
  const std::uint64_t threshold = retention_threshold(q);
  std::vector<Edge> kept;
  double total = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const CounterUniform uniform(derive_seed(seed, t));
    kept.clear();
    for (std::size_t i = 0; i < f.size(); ++i)
      if (uniform.bits53(f[i]) < threshold) kept.push_back(endpoints[i]);
    const std::size_t size = maximum_matching_size(g.num_vertices(), kept);
    r.sizes.push_back(size);
    r.min_size = std::min(r.min_size, size);
    r.max_size = std::max(r.max_size, size);
    total += static_cast<double>(size);
    if (static_cast<double>(size) < r.bound) ++r.below_bound;
  }
  r.mean_size = total / static_cast<double>(trials);
  r.below_bound_fraction = static_cast<double>(r.below_bound) / static_cast<double>(trials);
  return r;
}

}  // namespace ercp
