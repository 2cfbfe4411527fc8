#include "ercp/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ercp/error.hpp"

namespace ercp {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n > std::numeric_limits<Vertex>::max()) throw InvalidInput("vertex count exceeds 32-bit ids");
  std::vector<Edge> sorted;
  sorted.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has an endpoint outside [0," + std::to_string(n) + ")");
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    sorted.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
    throw InvalidInput("duplicate edge (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");

  Graph g;
  g.n_ = n;
  g.offset_.assign(n + 1, 0);
  for (const Edge& e : sorted) {
    ++g.offset_[e.u + 1];
    ++g.offset_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offset_[v + 1] += g.offset_[v];
  g.adj_.resize(g.offset_[n]);
  std::vector<std::uint64_t> fill(g.offset_.begin(), g.offset_.end() - 1);
  // Lexicographic edge order fills every row in ascending order: lower
  // neighbors arrive (by their row index) before upper ones.
  for (const Edge& e : sorted) {
    g.adj_[fill[e.u]++] = e.v;
    g.adj_[fill[e.v]++] = e.u;
  }
  g.finish();
  return g;
}

Graph Graph::from_regular_table(std::size_t n, std::size_t d, std::vector<Vertex> table) {
  if (table.size() != n * d) throw InvalidInput("neighbor table size does not equal n*d");
  if (n > std::numeric_limits<Vertex>::max()) throw InvalidInput("vertex count exceeds 32-bit ids");
  Graph g;
  g.n_ = n;
  g.offset_.resize(n + 1);
  for (std::size_t v = 0; v <= n; ++v) g.offset_[v] = v * d;
  g.adj_ = std::move(table);
  for (std::size_t v = 0; v < n; ++v) {
    auto row = std::span(g.adj_).subspan(v * d, d);
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i < d; ++i) {
      if (row[i] >= n) throw InvalidInput("neighbor outside vertex range at row " + std::to_string(v));
      if (row[i] == v) throw InvalidInput("self-loop at vertex " + std::to_string(v));
      if (i > 0 && row[i] == row[i - 1])
        throw InvalidInput("duplicate edge (" + std::to_string(v) + "," + std::to_string(row[i]) + ")");
    }
  }
  g.finish();
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
      if (!g.adjacent(w, static_cast<Vertex>(v)))
        throw InvalidInput("asymmetric neighbor table at (" + std::to_string(v) + "," + std::to_string(w) + ")");
  return g;
}

void Graph::finish() {
  edge_begin_.assign(n_ + 1, 0);
  min_degree_ = n_ == 0 ? 0 : std::numeric_limits<std::size_t>::max();
  max_degree_ = 0;
  for (std::size_t v = 0; v < n_; ++v) {
    auto row = neighbors(static_cast<Vertex>(v));
    const auto upper = static_cast<std::size_t>(
        row.end() - std::upper_bound(row.begin(), row.end(), static_cast<Vertex>(v)));
    edge_begin_[v + 1] = edge_begin_[v] + upper;
    min_degree_ = std::min(min_degree_, row.size());
    max_degree_ = std::max(max_degree_, row.size());
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

EdgeId Graph::edge_id(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  if (v >= n_) throw InvalidInput("edge endpoint out of range");
  auto upper = upper_neighbors(u);
  auto it = std::lower_bound(upper.begin(), upper.end(), v);
  if (it == upper.end() || *it != v)
    throw InvalidInput("no edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return edge_begin_[u] + static_cast<EdgeId>(it - upper.begin());
}

Edge Graph::edge(EdgeId e) const {
  if (e >= num_edges()) throw InvalidInput("edge id " + std::to_string(e) + " out of range");
  auto it = std::upper_bound(edge_begin_.begin(), edge_begin_.end(), e);
  const auto u = static_cast<Vertex>(it - edge_begin_.begin() - 1);
  return {u, upper_neighbors(u)[e - edge_begin_[u]]};
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for_each_edge([&](EdgeId, Vertex u, Vertex v) { out.push_back({u, v}); });
  return out;
}

}  // namespace ercp
