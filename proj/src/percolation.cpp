#include "ercp/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ercp/error.hpp"
#include "ercp/graph_ops.hpp"

namespace ercp {

std::vector<EdgeId> PercolationSample::retained_ids() const {
  std::vector<EdgeId> out;
  const auto words = retained.words();
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1)
      out.push_back(w * 64 + static_cast<EdgeId>(std::countr_zero(bits)));
  return out;
}

PercolationSample percolate(const Graph& g, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("retention probability must lie in [0, 1]");
  PercolationSample s{&g, p, seed, Bitset(g.num_edges())};
  const CounterUniform uniform(seed);
  const std::uint64_t threshold = retention_threshold(p);
  const std::uint64_t m = g.num_edges();
  auto words = s.retained.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = 0;
    const EdgeId base = static_cast<EdgeId>(w) * 64;
    const EdgeId stop = std::min<EdgeId>(base + 64, m);
    for (EdgeId e = base; e < stop; ++e) word |= std::uint64_t{uniform.bits53(e) < threshold} << (e - base);
    words[w] = word;
  }
  return s;
}

ComponentSummary components(const PercolationSample& s) { return components(*s.graph, &s.retained); }

ExposurePair double_exposure_split(double p, double eps, double d) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  if (!(d > 0.0)) throw InvalidInput("d must be positive");
  ExposurePair pair;
  pair.p = p;
  pair.p2 = eps <= 0.0 ? 0.0 : eps * eps * eps / d;
  if (p < pair.p2) throw InvalidInput("p is below the sprinkling probability eps^3/d");
  pair.p1 = p >= 1.0 ? 1.0 : 1.0 - (1.0 - p) / (1.0 - pair.p2);
  return pair;
}

PercolationSample union_samples(const PercolationSample& a, const PercolationSample& b) {
  if (a.graph != b.graph || a.retained.size() != b.retained.size())
    throw InvalidInput("samples belong to different host graphs");
  PercolationSample out = a;
  out.retained |= b.retained;
  out.p = 1.0 - (1.0 - a.p) * (1.0 - b.p);
  return out;
}

double large_component_threshold(std::size_t n, double eps, double c) {
  if (eps == 0.0) throw InvalidInput("eps must be nonzero for a log n / eps^2 threshold");
  return c * std::log(static_cast<double>(n)) / (eps * eps);
}

VertexSet large_component_vertices(const ComponentSummary& summary, double threshold) {
  if (!(threshold >= 1.0)) throw InvalidInput("threshold must be at least 1");
  VertexSet out(summary.label.size());
  for (std::size_t v = 0; v < summary.label.size(); ++v)
    if (static_cast<double>(summary.label_size[summary.label[v]]) >= threshold) out.insert(static_cast<Vertex>(v));
  return out;
}

VertexSet large_component_vertices(const PercolationSample& s, double threshold) {
  return large_component_vertices(components(s), threshold);
}

std::uint64_t gap_scan(const ComponentSummary& summary, double lo, double hi) {
  if (lo > hi) throw InvalidInput("gap window has lo > hi");
  // sizes are descending
  auto first = std::lower_bound(summary.sizes.begin(), summary.sizes.end(), hi,
                                [](std::uint64_t size, double h) { return static_cast<double>(size) > h; });
  auto last = std::lower_bound(first, summary.sizes.end(), lo,
                               [](std::uint64_t size, double l) { return static_cast<double>(size) >= l; });
  return static_cast<std::uint64_t>(last - first);
}

SprinkleReport sprinkle_merge_stat(const Graph& g, double p, double eps, std::uint64_t seed,
                                   std::optional<double> threshold) {
  const auto d = static_cast<double>(g.regular_degree().value_or(g.max_degree()));
  SprinkleReport r;
  r.split = double_exposure_split(p, eps, d);
  r.threshold = threshold.value_or(large_component_threshold(g.num_vertices(), eps));
  const PercolationSample s1 = percolate(g, r.split.p1, derive_seed(seed, 1));
  const PercolationSample s2 = percolate(g, r.split.p2, derive_seed(seed, 2));
  const ComponentSummary c1 = components(s1);
  for (std::uint64_t size : c1.sizes) {
    if (static_cast<double>(size) < r.threshold) break;
    ++r.stage1_large_components;
    r.large_vertices += size;
  }
  r.union_summary = components(union_samples(s1, s2));
  std::vector<char> hit(r.union_summary.count(), 0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (static_cast<double>(c1.label_size[c1.label[v]]) < r.threshold) continue;
    char& h = hit[r.union_summary.label[v]];
    if (!h) {
      h = 1;
      ++r.union_components_hit;
    }
  }
  r.merged = r.union_components_hit <= 1;
  return r;
}

std::size_t default_dense_radius(std::size_t n, std::size_t d) {
  if (d < 2 || n < 3) return 1;
  const double value = 1.0 + std::log(std::log(static_cast<double>(n))) / std::log(static_cast<double>(d));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(value - 1e-12)));
}

DenseReport everywhere_dense_stat(const Graph& g, const ComponentSummary& sample_components, std::size_t radius,
                                  double large_threshold, std::uint64_t n_probes, std::uint64_t seed) {
  if (radius < 1) throw InvalidInput("radius must be at least 1");
  if (sample_components.label.size() != g.num_vertices()) throw InvalidInput("component summary does not match graph");
  if (g.num_vertices() == 0) throw InvalidInput("empty graph");
  DenseReport r;
  r.radius = radius;
  r.threshold = large_threshold;
  r.probes = n_probes;
  r.min_hits = std::numeric_limits<std::uint64_t>::max();
  BallExplorer explorer(g);
  Engine rng(seed);
  double total = 0;
  for (std::uint64_t i = 0; i < n_probes; ++i) {
    const auto v = static_cast<Vertex>(bounded(rng, g.num_vertices()));
    std::uint64_t hits = 0;
    for (Vertex w : explorer.explore(v, radius))
      if (static_cast<double>(sample_components.component_size_of(w)) >= large_threshold) ++hits;
    r.min_hits = std::min(r.min_hits, hits);
    if (hits == 0) ++r.zero_probes;
    total += static_cast<double>(hits);
  }
  if (n_probes == 0) r.min_hits = 0;
  r.mean_hits = n_probes == 0 ? 0.0 : total / static_cast<double>(n_probes);
  r.zero_fraction = n_probes == 0 ? 0.0 : static_cast<double>(r.zero_probes) / static_cast<double>(n_probes);
  return r;
}

DenseReport everywhere_dense_stat(const PercolationSample& s, std::size_t radius, double large_threshold,
                                  std::uint64_t n_probes, std::uint64_t seed) {
  return everywhere_dense_stat(*s.graph, components(s), radius, large_threshold, n_probes, seed);
}

std::vector<Edge> sample_complete_graph_edges(std::size_t n, double p, Engine& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("retention probability must lie in [0, 1]");
  if (n > std::numeric_limits<Vertex>::max()) throw InvalidInput("vertex count exceeds 32-bit ids");
  std::vector<Edge> out;
  if (n < 2 || p == 0.0) return out;
  const std::uint64_t m = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (p >= 1.0 && m > (std::uint64_t{1} << 31)) throw BudgetExceeded("complete graph sample with p = 1 is too large");
  const double log_q = std::log1p(-p);
  std::uint64_t u = 0;
  std::uint64_t row_begin = 0;       // id of edge (u, u + 1)
  std::uint64_t row_end = n - 1;     // one past the last id of row u
  std::uint64_t idx = 0;
  bool first = true;
  while (true) {
    std::uint64_t skip = 0;
    if (p < 1.0) {
      const double gap = std::floor(std::log(1.0 - uniform01(rng)) / log_q);
      if (gap >= static_cast<double>(m)) break;
      skip = static_cast<std::uint64_t>(gap);
    }
    idx = first ? skip : idx + 1 + skip;
    first = false;
    if (idx >= m) break;
    while (idx >= row_end) {
      ++u;
      row_begin = row_end;
      row_end += n - 1 - u;
    }
    out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + (idx - row_begin))});
  }
  return out;
}

}  // namespace ercp
