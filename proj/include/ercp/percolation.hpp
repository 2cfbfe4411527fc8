#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ercp/bitset.hpp"
#include "ercp/components.hpp"
#include "ercp/graph.hpp"
#include "ercp/random.hpp"
#include "ercp/vertex_set.hpp"

namespace ercp {

/// Bond percolation sample: edge e is retained iff CounterUniform(seed).uniform(e) < p.
struct PercolationSample {
  const Graph* graph = nullptr;
  double p = 0;
  std::uint64_t seed = 0;
  Bitset retained;

  std::uint64_t retained_count() const { return retained.count(); }
  std::vector<EdgeId> retained_ids() const;
};

PercolationSample percolate(const Graph& g, double p, std::uint64_t seed);

/// Components of the retained subgraph.
ComponentSummary components(const PercolationSample& s);

struct ExposurePair {
  double p = 0;
  double p1 = 0;
  double p2 = 0;
};

/// p2 = eps^3 / d and (1 - p1)(1 - p2) = 1 - p.
ExposurePair double_exposure_split(double p, double eps, double d);

/// Bitwise OR of two samples on the same host.
PercolationSample union_samples(const PercolationSample& a, const PercolationSample& b);

/// c * ln(n) / eps^2; c = 7 by default, 14 for the stricter preset.
double large_component_threshold(std::size_t n, double eps, double c = 7.0);

/// Vertices whose component has at least `threshold` vertices.
VertexSet large_component_vertices(const ComponentSummary& summary, double threshold);
VertexSet large_component_vertices(const PercolationSample& s, double threshold);

/// Number of components with size in [lo, hi].
std::uint64_t gap_scan(const ComponentSummary& summary, double lo, double hi);

struct SprinkleReport {
  ExposurePair split;
  double threshold = 0;
  std::uint64_t stage1_large_components = 0;
  std::uint64_t large_vertices = 0;
  /// Every vertex of V_L(G_p1) lies in one component of G_p1 u G_p2.
  bool merged = false;
  std::uint64_t union_components_hit = 0;
  ComponentSummary union_summary;
};

/// Stage seeds are derive_seed(seed, 1) and derive_seed(seed, 2). The default
/// threshold is 7 ln(n) / eps^2.
SprinkleReport sprinkle_merge_stat(const Graph& g, double p, double eps, std::uint64_t seed,
                                   std::optional<double> threshold = std::nullopt);

struct DenseReport {
  std::size_t radius = 0;
  double threshold = 0;
  std::uint64_t probes = 0;
  std::uint64_t min_hits = 0;
  double mean_hits = 0;
  std::uint64_t zero_probes = 0;
  double zero_fraction = 0;
};

/// ceil(1 + log_d(ln n)), at least 1.
std::size_t default_dense_radius(std::size_t n, std::size_t d);

/// For n_probes vertices drawn uniformly (stream `seed`), counts the vertices of
/// B_G(v, radius) lying in components of size >= large_threshold.
DenseReport everywhere_dense_stat(const Graph& g, const ComponentSummary& sample_components, std::size_t radius,
                                  double large_threshold, std::uint64_t n_probes, std::uint64_t seed);
DenseReport everywhere_dense_stat(const PercolationSample& s, std::size_t radius, double large_threshold,
                                  std::uint64_t n_probes, std::uint64_t seed);

/// Retained edge list of bond percolation on K_n, sampled by geometric skips
/// over the lexicographic edge order. Used where K_n is too large to store.
std::vector<Edge> sample_complete_graph_edges(std::size_t n, double p, Engine& rng);

}  // namespace ercp
