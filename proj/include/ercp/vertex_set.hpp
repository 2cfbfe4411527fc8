#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ercp/bitset.hpp"

namespace ercp {

using Vertex = std::uint32_t;

/// Subset of {0, ..., n-1} with a cached cardinality.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe) {}

  static VertexSet of(std::size_t universe, std::span<const Vertex> members);
  static VertexSet all(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(Vertex v) const { return v < bits_.size() && bits_.test(v); }
  bool insert(Vertex v);
  bool erase(Vertex v);

  /// Members in increasing order.
  std::vector<Vertex> members() const;
  VertexSet complement() const;

  const Bitset& bits() const { return bits_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }

 private:
  Bitset bits_;
  std::size_t count_ = 0;
};

}  // namespace ercp
