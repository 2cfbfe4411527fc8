#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ercp/graph.hpp"

namespace ercp {

enum class Property { P1, P2, P3 };
enum class Verdict { certified_exact, certified_spectral, no_violation_found, violated };

std::string_view property_name(Property p);
std::string_view verdict_name(Verdict v);

/// Outcome of checking one expansion property. `constant` is the smallest
/// normalized value seen: e(U,U^C)/|U| for P1, |N(U)|/(d|U|) for P2 and
/// e(U,U^C)/(d|U|) for P3. A witness is present iff the verdict is violated.
struct ExpansionReport {
  Property property = Property::P1;
  std::string method;
  std::size_t size_cap_exact = 0;
  std::size_t size_cap_searched = 0;
  double constant = 0;
  double target = 0;
  Verdict verdict = Verdict::no_violation_found;
  std::optional<std::vector<Vertex>> witness;
  std::uint64_t sets_examined = 0;
  std::uint64_t proposals = 0;
  bool budget_exhausted = false;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  std::optional<double> lambda2;
};

struct SpectralEstimate {
  /// Upper estimate of the second-largest adjacency eigenvalue.
  double lambda2 = 0;
  /// Rayleigh quotient of the final iterate.
  double rayleigh = 0;
  double residual = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration on A + dI restricted to the complement of the all-ones
/// vector. Returns rayleigh + residual, a bound on the eigenvalue the iterate
/// approximates. Rejects non-regular and disconnected graphs.
SpectralEstimate spectral_gap_estimate(const Graph& g, double tol = 1e-6, std::size_t max_iterations = 20000,
                                       std::uint64_t seed = 1);

enum class P1Method { exact, spectral, search };

struct P1Options {
  P1Method method = P1Method::exact;
  /// Violated iff some 1 <= |U| <= n/2 has e(U,U^C) < target * |U|.
  double target = 1e-12;
  /// Search proposals.
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  double spectral_tol = 1e-6;
};

/// Exact: all subsets with 1 <= |U| <= n/2 (n <= 20). Spectral: c1 >= (d - lambda2)/2.
/// Search: greedy boundary-minimizing growth from random start vertices.
ExpansionReport certify_global_expansion(const Graph& g, const P1Options& opts = {});

struct P2Options {
  std::size_t k_max = 8;
  /// Violated iff some connected U has |N(U)| < c3_target * d * |U|.
  double c3_target = 1e-12;
  /// Upper bound on the connected sets visited.
  std::uint64_t budget = 1'000'000;
};

ExpansionReport certify_vertex_expansion(const Graph& g, const P2Options& opts = {});

struct P3Options {
  std::size_t k_max_exact = 8;
  /// Largest size probed by annealing; no search when <= size_cap_exact.
  std::size_t k_max_search = 0;
  double slack = 1e-3;
  std::uint64_t budget = 1'000'000;
  std::uint64_t search_budget = 1'000'000;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
};

/// Violated iff some set has e(U,U^C) < (1 - slack) d |U|.
ExpansionReport certify_small_set_expansion(const Graph& g, const P3Options& opts = {});

struct BallFailure {
  Vertex vertex = 0;
  std::size_t ball_size = 0;
  /// "precondition_violated" when a ball B(v, i), i <= r, of size <= k has
  /// e(X, X^C) < (1 - eps^3) d |X|; otherwise "contradiction".
  std::string attribution;
  std::optional<std::vector<Vertex>> witness;
  std::size_t witness_radius = 0;
};

struct BallGrowthReport {
  std::size_t k = 0;
  double eps = 0;
  std::size_t radius = 0;
  double bound = 0;  // min(k, eps^(-3r))
  std::uint64_t sampled = 0;
  std::uint64_t failures = 0;
  std::size_t min_ball = 0;
  bool holds = true;
  /// First failures in sampling order, at most 16.
  std::vector<BallFailure> examples;
};

/// Checks |B(v, r)| >= min(k, eps^(-3r)) on sample_vertices vertices drawn with
/// stream `seed` (every vertex when sample_vertices >= n).
BallGrowthReport ball_growth_check(const Graph& g, std::size_t k, double eps, std::size_t r,
                                   std::uint64_t sample_vertices, std::uint64_t seed);

}  // namespace ercp
