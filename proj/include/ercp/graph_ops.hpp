#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ercp/graph.hpp"
#include "ercp/vertex_set.hpp"

namespace ercp {

/// e(U, U^C): edges with exactly one endpoint in U.
std::uint64_t edge_boundary(const Graph& g, const VertexSet& u);

/// N(U) \ U: vertices outside U with a neighbor in U.
VertexSet external_neighborhood(const Graph& g, const VertexSet& u);

/// B(v, r): vertices at graph distance at most r from v.
VertexSet ball(const Graph& g, Vertex v, std::size_t radius);

/// True if the induced subgraph G[U] is connected (the empty set is not).
bool is_connected_set(const Graph& g, std::span<const Vertex> members);

/// Breadth-first ball exploration with O(|ball|) reset cost, for repeated
/// queries on one large graph. Not thread-safe; use one per worker.
class BallExplorer {
 public:
  explicit BallExplorer(const Graph& g);

  /// Vertices of B(v, r) in BFS order; valid until the next call.
  std::span<const Vertex> explore(Vertex v, std::size_t radius);
  /// Sizes of B(v, 0), ..., B(v, r) from the last explore() call.
  std::span<const std::size_t> layer_sizes() const { return cumulative_; }

 private:
  const Graph* g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> order_;
  std::vector<std::size_t> cumulative_;
};

}  // namespace ercp
