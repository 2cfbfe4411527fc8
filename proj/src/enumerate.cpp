#include "ercp/enumerate.hpp"

#include <algorithm>
#include <string>

#include "ercp/error.hpp"

namespace ercp {

std::vector<VertexSet> enumerate_connected_subsets(const Graph& g, std::size_t k_max) {
  if (k_max == 0) throw InvalidInput("k_max must be at least 1");
  std::vector<VertexSet> out;
  for_each_connected_subset(g, k_max, [&](std::span<const Vertex> s) {
    out.push_back(VertexSet::of(g.num_vertices(), s));
  });
  return out;
}

std::uint64_t count_spanning_trees(const Graph& g, std::span<const Vertex> members) {
  const std::size_t k = members.size();
  if (k <= 1) return k;
  // Laplacian of G[members] with the last row and column deleted; Bareiss
  // fraction-free elimination keeps every intermediate an exact integer.
  const std::size_t m = k - 1;
  std::vector<__int128> a(m * m, 0);
  auto at = [&](std::size_t i, std::size_t j) -> __int128& { return a[i * m + j]; };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.adjacent(members[i], members[j])) {
        if (i < m) ++at(i, i);
        if (j < m) ++at(j, j);
        if (i < m && j < m) {
          --at(i, j);
          --at(j, i);
        }
      }
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t p = 0; p < m; ++p) {
    if (at(p, p) == 0) {
      std::size_t swap_row = p + 1;
      while (swap_row < m && at(swap_row, p) == 0) ++swap_row;
      if (swap_row == m) return 0;
      for (std::size_t j = 0; j < m; ++j) std::swap(at(p, j), at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < m; ++i) {
      for (std::size_t j = p + 1; j < m; ++j) at(i, j) = (at(i, j) * at(p, p) - at(i, p) * at(p, j)) / prev;
      at(i, p) = 0;
    }
    prev = at(p, p);
  }
  const __int128 det = sign * at(m - 1, m - 1);
  return static_cast<std::uint64_t>(det < 0 ? -det : det);
}

std::uint64_t count_rooted_trees(const Graph& g, Vertex v, std::size_t k, std::uint64_t set_budget) {
  if (v >= g.num_vertices()) throw InvalidInput("root vertex out of range");
  if (k == 0) return 0;
  struct Counter {
    const Graph& g;
    std::size_t k;
    std::uint64_t budget;
    std::uint64_t visited = 0;
    std::uint64_t trees = 0;
    void push(Vertex) {}
    void pop(Vertex) {}
    bool visit(std::span<const Vertex> s) {
      if (++visited > budget)
        throw BudgetExceeded("rooted tree count needs more than " + std::to_string(budget) + " candidate sets");
      if (s.size() == k) trees += count_spanning_trees(g, s);
      return true;
    }
  } counter{g, k, set_budget};
  ConnectedSetEnumerator<Counter> en(g, k);
  en.run_containing(v, counter);
  return counter.trees;
}

}  // namespace ercp
