#include "ercp/graph_ops.hpp"

#include <algorithm>
#include <string>

#include "ercp/error.hpp"

namespace ercp {

namespace {

void check_universe(const Graph& g, const VertexSet& u) {
  if (u.universe() != g.num_vertices())
    throw InvalidInput("vertex set universe " + std::to_string(u.universe()) + " does not match graph order " +
                       std::to_string(g.num_vertices()));
}

}  // namespace

std::uint64_t edge_boundary(const Graph& g, const VertexSet& u) {
  check_universe(g, u);
  std::uint64_t count = 0;
  for (Vertex v : u.members())
    for (Vertex w : g.neighbors(v))
      if (!u.contains(w)) ++count;
  return count;
}

VertexSet external_neighborhood(const Graph& g, const VertexSet& u) {
  check_universe(g, u);
  VertexSet out(g.num_vertices());
  for (Vertex v : u.members())
    for (Vertex w : g.neighbors(v))
      if (!u.contains(w)) out.insert(w);
  return out;
}

VertexSet ball(const Graph& g, Vertex v, std::size_t radius) {
  if (v >= g.num_vertices()) throw InvalidInput("ball centre out of range");
  BallExplorer explorer(g);
  return VertexSet::of(g.num_vertices(), explorer.explore(v, radius));
}

bool is_connected_set(const Graph& g, std::span<const Vertex> members) {
  if (members.empty()) return false;
  std::vector<Vertex> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<char> seen(sorted.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = sorted[stack.back()];
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
      if (it == sorted.end() || *it != w) continue;
      const auto idx = static_cast<std::size_t>(it - sorted.begin());
      if (seen[idx]) continue;
      seen[idx] = 1;
      ++reached;
      stack.push_back(idx);
    }
  }
  return reached == sorted.size();
}

BallExplorer::BallExplorer(const Graph& g) : g_(&g), stamp_(g.num_vertices(), 0) {}

std::span<const Vertex> BallExplorer::explore(Vertex v, std::size_t radius) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  order_.clear();
  cumulative_.clear();
  order_.push_back(v);
  stamp_[v] = epoch_;
  cumulative_.push_back(1);
  std::size_t layer_begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t layer_end = order_.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i)
      for (Vertex w : g_->neighbors(order_[i]))
        if (stamp_[w] != epoch_) {
          stamp_[w] = epoch_;
          order_.push_back(w);
        }
    layer_begin = layer_end;
    cumulative_.push_back(order_.size());
    if (layer_begin == order_.size()) break;
  }
  return order_;
}

}  // namespace ercp
