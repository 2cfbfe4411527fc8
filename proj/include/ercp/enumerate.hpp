#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "ercp/graph.hpp"
#include "ercp/vertex_set.hpp"

namespace ercp {

/// Enumerates connected vertex sets by canonical extension: a set is grown only
/// through the exclusive neighborhood of the newest vertex (neighbors of it that
/// are neither in nor adjacent to the current set), which yields every connected
/// set exactly once without a global seen-set. Working memory is O(k * d) per branch.
///
/// Visitor requirements:
///   void push(Vertex)                  called after a vertex joins the current set
///   void pop(Vertex)                   called before it leaves
///   bool visit(std::span<const Vertex>) every emitted set; return false to stop
template <class Visitor>
class ConnectedSetEnumerator {
 public:
  ConnectedSetEnumerator(const Graph& g, std::size_t k_max) : g_(g), k_max_(k_max), closed_(g.num_vertices(), 0) {}

  /// Every connected set of size <= k_max; returns false if the visitor stopped early.
  bool run_all(Visitor& vis) {
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (!run_rooted(v, vis)) return false;
    return true;
  }

  /// Connected sets whose smallest vertex is `root`.
  bool run_rooted(Vertex root, Visitor& vis) { return start(root, true, vis); }

  /// Every connected set that contains `v`.
  bool run_containing(Vertex v, Visitor& vis) { return start(v, false, vis); }

 private:
  bool start(Vertex root, bool above_root_only, Visitor& vis) {
    if (k_max_ == 0) return true;
    root_ = root;
    above_only_ = above_root_only;
    std::vector<Vertex> ext;
    for (Vertex u : g_.neighbors(root))
      if (!above_only_ || u > root) ext.push_back(u);
    add(root, vis);
    const bool keep_going = extend(ext, vis);
    remove(root, vis);
    return keep_going;
  }

  bool extend(std::vector<Vertex>& ext, Visitor& vis) {
    if (!vis.visit(std::span<const Vertex>(sub_))) return false;
    if (sub_.size() >= k_max_) return true;
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      for (Vertex u : g_.neighbors(w))
        if (closed_[u] == 0 && (!above_only_ || u > root_)) next.push_back(u);
      add(w, vis);
      const bool keep_going = extend(next, vis);
      remove(w, vis);
      if (!keep_going) return false;
    }
    return true;
  }

  void add(Vertex w, Visitor& vis) {
    sub_.push_back(w);
    ++closed_[w];
    for (Vertex x : g_.neighbors(w)) ++closed_[x];
    vis.push(w);
  }

  void remove(Vertex w, Visitor& vis) {
    vis.pop(w);
    for (Vertex x : g_.neighbors(w)) --closed_[x];
    --closed_[w];
    sub_.pop_back();
  }

  const Graph& g_;
  std::size_t k_max_;
  std::vector<std::uint32_t> closed_;
  std::vector<Vertex> sub_;
  Vertex root_ = 0;
  bool above_only_ = true;
};

namespace detail {

template <class F>
struct CallbackVisitor {
  F& f;
  void push(Vertex) {}
  void pop(Vertex) {}
  bool visit(std::span<const Vertex> s) {
    if constexpr (std::is_same_v<std::invoke_result_t<F&, std::span<const Vertex>>, void>) {
      f(s);
      return true;
    } else {
      return static_cast<bool>(f(s));
    }
  }
};

}  // namespace detail

/// Calls f(members) for every connected set of size <= k_max, in a fixed
/// deterministic order. f may return bool (false stops) or void.
template <class F>
bool for_each_connected_subset(const Graph& g, std::size_t k_max, F&& f) {
  detail::CallbackVisitor<std::remove_reference_t<F>> vis{f};
  ConnectedSetEnumerator<decltype(vis)> en(g, k_max);
  return en.run_all(vis);
}

/// Materialized enumeration, for small graphs.
std::vector<VertexSet> enumerate_connected_subsets(const Graph& g, std::size_t k_max);

/// Number of subtrees of G on k vertices that contain v. Exhaustive: every
/// connected k-set through v is enumerated and its spanning trees counted with
/// the matrix-tree theorem. Throws BudgetExceeded when more than
/// `set_budget` candidate sets would be visited.
std::uint64_t count_rooted_trees(const Graph& g, Vertex v, std::size_t k, std::uint64_t set_budget = 1'000'000);

/// Spanning trees of the induced subgraph G[members] (matrix-tree theorem, exact integers).
std::uint64_t count_spanning_trees(const Graph& g, std::span<const Vertex> members);

}  // namespace ercp
