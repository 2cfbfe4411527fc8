#include "ercp/branching.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ercp/error.hpp"
#include "ercp/random.hpp"

namespace ercp {

namespace {

// y - 1 + exp(-a y), written with expm1 so small roots keep their precision.
double survival_gap(double y, double a) { return y + std::expm1(-a * y); }

}  // namespace

SurvivalSolution survival_probability(double eps, double tol) {
  if (!std::isfinite(eps)) throw InvalidInput("eps must be finite");
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
  SurvivalSolution s;
  s.eps = eps;
  if (eps <= 0.0) {
    s.subcritical = true;
    return s;
  }
  const double a = 1.0 + eps;
  if (eps < 1e-6) {
    s.near_critical = true;
    double y = 2.0 * eps / (a * a);
    for (int i = 0; i < 50; ++i) {
      const double f = survival_gap(y, a);
      const double df = 1.0 - a * std::exp(-a * y);
      if (df == 0.0) break;
      const double next = y - f / df;
      ++s.iterations;
      if (next == y || !(next > 0.0)) break;
      y = next;
    }
    s.y = y;
  } else {
    // f(lo) < 0 < f(1) since the root lies strictly between.
    double lo = std::min(tol, eps / (2.0 * a));
    double hi = 1.0;
    while (hi - lo > 0.0) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      ++s.iterations;
      const double f = survival_gap(mid, a);
      if (f == 0.0) {
        lo = hi = mid;
        break;
      }
      (f < 0.0 ? lo : hi) = mid;
    }
    s.y = std::abs(survival_gap(lo, a)) <= std::abs(survival_gap(hi, a)) ? lo : hi;
  }
  s.residual = std::abs(survival_gap(s.y, a));
  return s;
}

double regular_tree_survival(std::size_t d, double p, double tol) {
  if (d == 0 || !(p >= 0.0 && p <= 1.0)) throw InvalidInput("regular_tree_survival needs d >= 1 and p in [0, 1]");
  const auto k = static_cast<double>(d - 1);
  if (k * p <= 1.0) return 0.0;
  // s = 1 - (1 - p s)^(d-1) has one root in (0, 1]; f < 0 just above 0 and f(1) >= 0.
  auto f = [&](double s) { return s - 1.0 + std::exp(k * std::log1p(-p * s)); };
  double lo = std::min(tol, (k * p - 1.0) / (k * p * p * k));
  double hi = 1.0;
  while (f(lo) >= 0.0 && lo > 1e-300) lo *= 0.5;
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  return -std::expm1(static_cast<double>(d) * std::log1p(-p * s));
}

MonteCarloEstimate gw_survival_monte_carlo(std::size_t d, double p, std::size_t depth_cap, std::uint64_t trials,
                                           std::uint64_t seed, std::uint64_t explosion_cap) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  MonteCarloEstimate est;
  est.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Engine rng(derive_seed(seed, i));
    std::uint64_t population = 1;
    for (std::size_t gen = 0; gen < depth_cap && population > 0 && population < explosion_cap; ++gen) {
      // Offspring of the whole generation: one Bin(population * d, p) draw.
      std::binomial_distribution<std::uint64_t> offspring(population * d, p);
      population = offspring(rng);
    }
    if (population > 0) ++est.survivors;
  }
  est.estimate = static_cast<double>(est.survivors) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

}  // namespace ercp
