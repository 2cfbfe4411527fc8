#pragma once

#include <cstddef>
#include <cstdint>

namespace ercp {

/// Root of y = 1 - exp(-(1 + eps) y) in (0, 1): the survival probability of a
/// Galton-Watson tree with Poisson(1 + eps) offspring.
struct SurvivalSolution {
  double eps = 0;
  double y = 0;
  /// |y - (1 - exp(-(1 + eps) y))|
  double residual = 0;
  /// eps <= 0: no positive root, y = 0.
  bool subcritical = false;
  /// eps below 1e-6: root seeded at 2 eps / (1 + eps)^2 and polished by Newton steps.
  bool near_critical = false;
  int iterations = 0;
};

/// Bisection on f(y) = y - 1 + exp(-(1 + eps) y) over [tol, 1].
SurvivalSolution survival_probability(double eps, double tol = 1e-12);

/// Survival probability of the root cluster for percolation with parameter p
/// on the infinite d-regular tree: the root has Bin(d, p) children and every
/// other vertex Bin(d - 1, p). Zero unless (d - 1) p > 1.
double regular_tree_survival(std::size_t d, double p, double tol = 1e-13);

struct MonteCarloEstimate {
  double estimate = 0;
  double std_error = 0;
  std::uint64_t survivors = 0;
  std::uint64_t trials = 0;
};

/// Fraction of Bin(d, p) branching processes with a positive population at
/// generation depth_cap. A population reaching `explosion_cap` is counted as
/// surviving (its extinction probability is below (1 - q)^cap).
/// Trial i uses the stream derive_seed(seed, i).
MonteCarloEstimate gw_survival_monte_carlo(std::size_t d, double p, std::size_t depth_cap, std::uint64_t trials,
                                           std::uint64_t seed, std::uint64_t explosion_cap = 1'000'000);

}  // namespace ercp
