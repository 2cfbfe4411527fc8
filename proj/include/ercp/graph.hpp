#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ercp/vertex_set.hpp"

namespace ercp {

using EdgeId = std::uint64_t;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable finite simple graph in compressed sparse row layout.
///
/// Neighbor lists are sorted. Undirected edges carry canonical ids in
/// lexicographic (min, max) order, so the edges with smaller endpoint u occupy
/// the contiguous id range [edge_begin(u), edge_begin(u + 1)) and map to the
/// upper part of u's neighbor list.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalizes an edge list. Rejects self-loops, duplicate
  /// pairs (in either orientation) and out-of-range endpoints.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  /// Adopts a flat n x d neighbor table (row v holds the d neighbors of v in any
  /// order). Rows are sorted in place; symmetry and simplicity are verified.
  static Graph from_regular_table(std::size_t n, std::size_t d, std::vector<Vertex> table);

  std::size_t num_vertices() const { return n_; }
  std::uint64_t num_edges() const { return edge_begin_.empty() ? 0 : edge_begin_.back(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }

  /// Neighbors w > v, in edge-id order.
  std::span<const Vertex> upper_neighbors(Vertex v) const {
    const std::size_t upper = edge_begin_[v + 1] - edge_begin_[v];
    return {adj_.data() + offset_[v + 1] - upper, adj_.data() + offset_[v + 1]};
  }
  EdgeId edge_begin(Vertex v) const { return edge_begin_[v]; }

  std::size_t min_degree() const { return min_degree_; }
  std::size_t max_degree() const { return max_degree_; }
  std::optional<std::size_t> regular_degree() const {
    if (n_ > 0 && min_degree_ == max_degree_) return max_degree_;
    return std::nullopt;
  }

  bool adjacent(Vertex u, Vertex v) const;
  /// Canonical id of edge {u, v}; throws InvalidInput if absent.
  EdgeId edge_id(Vertex u, Vertex v) const;
  /// Endpoints (u < v) of edge e.
  Edge edge(EdgeId e) const;
  std::vector<Edge> edges() const;

  /// Calls f(edge_id, u, v) for every edge in id order (u < v).
  template <class F>
  void for_each_edge(F&& f) const {
    EdgeId e = 0;
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : upper_neighbors(u)) f(e++, u, v);
  }

 private:
  void finish();

  std::size_t n_ = 0;
  std::vector<std::uint64_t> offset_{0};
  std::vector<Vertex> adj_;
  std::vector<EdgeId> edge_begin_{0};
  std::size_t min_degree_ = 0;
  std::size_t max_degree_ = 0;
};

}  // namespace ercp
