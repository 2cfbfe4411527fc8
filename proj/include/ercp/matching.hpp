#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ercp/graph.hpp"

namespace ercp {

/// Maximum matching size of the graph on n vertices with the given edges
/// (duplicates ignored). Greedy start, then Edmonds augmenting paths with
/// blossom contraction until none is left.
std::size_t maximum_matching_size(std::size_t n, std::span<const Edge> edges);

struct MatchingTrialReport {
  double q = 0;
  double d = 0;
  double delta = 0;  // q * d
  std::size_t f_size = 0;
  std::uint64_t trials = 0;
  /// delta^2 |F| / d
  double bound = 0;
  /// exp(-bound)
  double failure_bound = 0;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  double mean_size = 0;
  std::uint64_t below_bound = 0;
  double below_bound_fraction = 0;
  std::vector<std::size_t> sizes;
};

/// Each trial keeps every edge of F with probability q (trial t uses the
/// counter-based stream derive_seed(seed, t) keyed by edge id) and records the
/// maximum matching size of the kept edges.
MatchingTrialReport percolated_matching_trial(const Graph& g, std::span<const EdgeId> f, double q, std::uint64_t seed,
                                              std::uint64_t trials);

}  // namespace ercp
