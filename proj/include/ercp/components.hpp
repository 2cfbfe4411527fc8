#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "ercp/bitset.hpp"
#include "ercp/graph.hpp"

namespace ercp {

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> size_;
};

/// Partition of the vertex set into connected components.
struct ComponentSummary {
  /// Component id per vertex; ids are assigned in order of each component's smallest vertex.
  std::vector<std::uint32_t> label;
  /// Size of the component with a given id.
  std::vector<std::uint64_t> label_size;
  /// All component sizes, descending.
  std::vector<std::uint64_t> sizes;

  std::size_t count() const { return sizes.size(); }
  std::uint64_t largest() const { return sizes.empty() ? 0 : sizes[0]; }
  /// 0 when there are fewer than two components.
  std::uint64_t second_largest() const { return sizes.size() < 2 ? 0 : sizes[1]; }
  std::uint64_t component_size_of(Vertex v) const { return label_size[label[v]]; }
};

/// Builds the summary from a finished union-find over all n vertices.
ComponentSummary summarize(DisjointSets& sets);

/// Components of the subgraph keeping the edges whose id bit is set in
/// `retained` (all edges when null). Throws InvalidInput on a length mismatch.
ComponentSummary components(const Graph& g, const Bitset* retained = nullptr);

/// Components of the graph on n vertices with the given edge list (duplicates allowed).
ComponentSummary components_of_edges(std::size_t n, std::span<const Edge> edges);

}  // namespace ercp
