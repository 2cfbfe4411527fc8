#include "ercp/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ercp/components.hpp"
#include "ercp/enumerate.hpp"
#include "ercp/error.hpp"
#include "ercp/graph_ops.hpp"
#include "ercp/random.hpp"

namespace ercp {

std::string_view property_name(Property p) {
  switch (p) {
    case Property::P1: return "P1";
    case Property::P2: return "P2";
    case Property::P3: return "P3";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified_exact: return "certified_exact";
    case Verdict::certified_spectral: return "certified_spectral";
    case Verdict::no_violation_found: return "no_violation_found";
    case Verdict::violated: return "violated";
  }
  return "?";
}

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

double host_degree(const Graph& g) { return static_cast<double>(g.regular_degree().value_or(g.max_degree())); }

/// Vertex set with incrementally maintained e(U, U^C) and |N(U) \ U|.
class TrackedSet {
 public:
  explicit TrackedSet(const Graph& g) : g_(&g), cnt_(g.num_vertices(), 0), pos_(g.num_vertices(), kAbsent) {}

  bool contains(Vertex v) const { return pos_[v] != kAbsent; }
  std::size_t size() const { return members_.size(); }
  std::uint64_t boundary() const { return boundary_; }
  std::uint64_t external() const { return external_; }
  std::span<const Vertex> members() const { return members_; }
  /// Change of e(U, U^C) if w (not in U) were added.
  std::int64_t add_delta(Vertex w) const {
    return static_cast<std::int64_t>(g_->degree(w)) - 2 * static_cast<std::int64_t>(cnt_[w]);
  }
  std::int64_t remove_delta(Vertex w) const { return -add_delta(w); }
  std::uint32_t inside_neighbors(Vertex w) const { return cnt_[w]; }

  void add(Vertex w) {
    boundary_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(boundary_) + add_delta(w));
    if (cnt_[w] > 0) --external_;
    pos_[w] = static_cast<std::uint32_t>(members_.size());
    members_.push_back(w);
    for (Vertex x : g_->neighbors(w))
      if (cnt_[x]++ == 0 && !contains(x)) ++external_;
  }

  void remove(Vertex w) {
    for (Vertex x : g_->neighbors(w))
      if (--cnt_[x] == 0 && !contains(x)) --external_;
    const std::uint32_t at = pos_[w];
    members_[at] = members_.back();
    pos_[members_[at]] = at;
    members_.pop_back();
    pos_[w] = kAbsent;
    if (cnt_[w] > 0) ++external_;
    boundary_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(boundary_) + remove_delta(w));
  }

  void clear() {
    while (!members_.empty()) remove(members_.back());
  }

 private:
  const Graph* g_;
  std::vector<std::uint32_t> cnt_;
  std::vector<std::uint32_t> pos_;
  std::vector<Vertex> members_;
  std::uint64_t boundary_ = 0;
  std::uint64_t external_ = 0;
};

struct StopEnumeration {};

/// Iterative deepening over connected sets: level k enumerates all sets of
/// size <= k and scores those of size exactly k. A level is complete only if it
/// finishes within the remaining budget.
template <class Score>
void exact_connected_levels(const Graph& g, std::size_t k_max, std::uint64_t budget, Score score,
                            ExpansionReport& report, double& best, std::vector<Vertex>& best_set) {
  struct LevelVisitor {
    TrackedSet& set;
    std::size_t level;
    std::uint64_t& visited;
    std::uint64_t budget;
    Score& score;
    double& best;
    std::vector<Vertex>& best_set;
    std::uint64_t at_level = 0;
    void push(Vertex v) { set.add(v); }
    void pop(Vertex v) { set.remove(v); }
    bool visit(std::span<const Vertex> s) {
      if (visited >= budget) throw StopEnumeration{};
      ++visited;
      if (s.size() != level) return true;
      ++at_level;
      const double value = score(set);
      if (value < best) {
        best = value;
        best_set.assign(s.begin(), s.end());
      }
      return true;
    }
  };
  TrackedSet set(g);
  std::uint64_t visited = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    LevelVisitor vis{set, k, visited, budget, score, best, best_set};
    ConnectedSetEnumerator<LevelVisitor> en(g, k);
    try {
      en.run_all(vis);
    } catch (const StopEnumeration&) {
      set.clear();
      report.budget_exhausted = true;
      break;
    }
    report.size_cap_exact = k;
    if (vis.at_level == 0) {
      // No connected set of this size, so none larger either.
      report.size_cap_exact = k_max;
      break;
    }
  }
  report.sets_examined = visited;
}

void finish_verdict(ExpansionReport& r, double best, std::vector<Vertex> best_set, bool violated) {
  r.constant = best;
  if (violated) {
    r.verdict = Verdict::violated;
    std::sort(best_set.begin(), best_set.end());
    r.witness = std::move(best_set);
  } else {
    r.verdict = r.budget_exhausted ? Verdict::no_violation_found : Verdict::certified_exact;
  }
}

}  // namespace

SpectralEstimate spectral_gap_estimate(const Graph& g, double tol, std::size_t max_iterations, std::uint64_t seed) {
  const auto d_opt = g.regular_degree();
  if (!d_opt) throw InvalidInput("spectral estimate needs a regular graph");
  if (g.num_vertices() < 2) throw InvalidInput("spectral estimate needs at least two vertices");
  if (components(g).count() != 1) throw InvalidInput("graph is disconnected (lambda2 = d)");
  const std::size_t n = g.num_vertices();
  const auto d = static_cast<double>(*d_opt);

  auto project_normalize = [&](std::vector<double>& x) {
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double norm = 0;
    for (double& v : x) {
      v -= mean;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) throw InvalidInput("power iteration collapsed");
    for (double& v : x) v /= norm;
  };
  // y = (A + dI) x
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t v = 0; v < n; ++v) {
      double s = d * x[v];
      for (Vertex w : g.neighbors(static_cast<Vertex>(v))) s += x[w];
      y[v] = s;
    }
  };

  Engine rng(seed);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = uniform01(rng) - 0.5;
  project_normalize(x);
  SpectralEstimate est;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    apply(x, y);
    const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    for (double& v : y) v -= mean;
    double theta = 0;
    for (std::size_t v = 0; v < n; ++v) theta += x[v] * y[v];
    double res = 0;
    for (std::size_t v = 0; v < n; ++v) res += (y[v] - theta * x[v]) * (y[v] - theta * x[v]);
    est.rayleigh = theta - d;
    est.residual = std::sqrt(res);
    est.iterations = it + 1;
    if (est.residual <= tol * d) {
      est.converged = true;
      break;
    }
    x.swap(y);
    project_normalize(x);
  }
  est.lambda2 = est.rayleigh + est.residual;
  return est;
}

ExpansionReport certify_global_expansion(const Graph& g, const P1Options& opts) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw InvalidInput("P1 needs at least two vertices");
  ExpansionReport r;
  r.property = Property::P1;
  r.target = opts.target;
  r.seed = opts.seed;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_set;

  switch (opts.method) {
    case P1Method::exact: {
      r.method = "exact";
      if (n > 20) throw BudgetExceeded("exact P1 certification is limited to n <= 20");
      std::vector<std::uint32_t> nbr(n, 0);
      for (std::size_t v = 0; v < n; ++v)
        for (Vertex w : g.neighbors(static_cast<Vertex>(v))) nbr[v] |= std::uint32_t{1} << w;
      // Gray-code walk: one vertex toggles per step.
      std::uint32_t mask = 0;
      std::int64_t boundary = 0;
      std::uint32_t best_mask = 0;
      const std::uint64_t total = std::uint64_t{1} << n;
      for (std::uint64_t i = 1; i < total; ++i) {
        const auto v = static_cast<unsigned>(std::countr_zero(i));
        const int inside = std::popcount(nbr[v] & mask);
        const auto deg = static_cast<std::int64_t>(g.degree(v));
        if (mask >> v & 1U) {
          mask &= ~(std::uint32_t{1} << v);
          boundary -= deg - 2 * inside;
        } else {
          boundary += deg - 2 * inside;
          mask |= std::uint32_t{1} << v;
        }
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (2 * size > n) continue;
        ++r.sets_examined;
        const double ratio = static_cast<double>(boundary) / static_cast<double>(size);
        if (ratio < best) {
          best = ratio;
          best_mask = mask;
        }
      }
      for (std::size_t v = 0; v < n; ++v)
        if (best_mask >> v & 1U) best_set.push_back(static_cast<Vertex>(v));
      r.size_cap_exact = n / 2;
      finish_verdict(r, best, best_set, best < opts.target);
      return r;
    }
    case P1Method::spectral: {
      r.method = "spectral";
      const SpectralEstimate est = spectral_gap_estimate(g, opts.spectral_tol, 20000, opts.seed);
      const double d = static_cast<double>(*g.regular_degree());
      r.lambda2 = est.lambda2;
      // e(U,U^C) >= (d - lambda2)|U||U^C|/n and |U^C|/n >= 1/2.
      r.constant = (d - est.lambda2) / 2.0;
      r.verdict = r.constant >= opts.target ? Verdict::certified_spectral : Verdict::no_violation_found;
      return r;
    }
    case P1Method::search: {
      r.method = "search";
      TrackedSet set(g);
      std::vector<Vertex> frontier;
      std::vector<Vertex> order;
      for (std::uint64_t restart = 0; r.proposals < opts.budget; ++restart) {
        Engine rng(derive_seed(opts.seed, restart));
        set.clear();
        order.clear();
        frontier.clear();
        auto grow = [&](Vertex w) {
          set.add(w);
          order.push_back(w);
          for (Vertex x : g.neighbors(w))
            if (!set.contains(x) && set.inside_neighbors(x) == 1) frontier.push_back(x);
        };
        grow(static_cast<Vertex>(bounded(rng, n)));
        std::size_t best_prefix = 0;
        double restart_best = std::numeric_limits<double>::infinity();
        while (2 * set.size() <= n) {
          const double ratio = static_cast<double>(set.boundary()) / static_cast<double>(set.size());
          if (ratio < restart_best) {
            restart_best = ratio;
            best_prefix = set.size();
          }
          if (r.proposals >= opts.budget || 2 * (set.size() + 1) > n) break;
          // Drop stale entries, then take the frontier vertex with the smallest boundary change.
          std::erase_if(frontier, [&](Vertex x) { return set.contains(x); });
          if (frontier.empty()) {
            // Whole component absorbed; jump to a fresh vertex.
            Vertex w = static_cast<Vertex>(bounded(rng, n));
            while (set.contains(w)) w = static_cast<Vertex>((w + 1) % n);
            grow(w);
            continue;
          }
          std::size_t pick = 0;
          std::int64_t pick_delta = std::numeric_limits<std::int64_t>::max();
          std::uint64_t ties = 0;
          for (std::size_t i = 0; i < frontier.size(); ++i) {
            ++r.proposals;
            const std::int64_t delta = set.add_delta(frontier[i]);
            if (delta < pick_delta) {
              pick_delta = delta;
              pick = i;
              ties = 1;
            } else if (delta == pick_delta && bounded(rng, ++ties) == 0) {
              pick = i;
            }
          }
          const Vertex w = frontier[pick];
          frontier[pick] = frontier.back();
          frontier.pop_back();
          grow(w);
        }
        r.size_cap_searched = std::max(r.size_cap_searched, set.size());
        if (restart_best < best) {
          best = restart_best;
          best_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
        }
        if (best < opts.target) break;
      }
      r.constant = best;
      if (best < opts.target) {
        r.verdict = Verdict::violated;
        std::sort(best_set.begin(), best_set.end());
        r.witness = std::move(best_set);
      } else {
        r.verdict = Verdict::no_violation_found;
      }
      return r;
    }
  }
  throw InvalidInput("unknown P1 method");
}

ExpansionReport certify_vertex_expansion(const Graph& g, const P2Options& opts) {
  if (opts.k_max == 0) throw InvalidInput("k_max must be at least 1");
  if (g.num_vertices() == 0) throw InvalidInput("empty graph");
  ExpansionReport r;
  r.property = Property::P2;
  r.method = "exact";
  r.target = opts.c3_target;
  const double d = host_degree(g);
  if (d == 0) throw InvalidInput("graph has no edges");
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_set;
  auto score = [d](const TrackedSet& s) {
    return static_cast<double>(s.external()) / (d * static_cast<double>(s.size()));
  };
  exact_connected_levels(g, opts.k_max, opts.budget, score, r, best, best_set);
  finish_verdict(r, best, best_set, best < opts.c3_target);
  return r;
}

ExpansionReport certify_small_set_expansion(const Graph& g, const P3Options& opts) {
  if (!(opts.slack > 0.0 && opts.slack < 1.0)) throw InvalidInput("slack must lie in (0, 1)");
  if (opts.k_max_exact == 0) throw InvalidInput("k_max_exact must be at least 1");
  if (g.num_vertices() == 0) throw InvalidInput("empty graph");
  ExpansionReport r;
  r.property = Property::P3;
  r.method = "exact";
  r.target = 1.0 - opts.slack;
  r.seed = opts.seed;
  const double d = host_degree(g);
  if (d == 0) throw InvalidInput("graph has no edges");
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_set;
  auto score = [d](const TrackedSet& s) {
    return static_cast<double>(s.boundary()) / (d * static_cast<double>(s.size()));
  };
  exact_connected_levels(g, opts.k_max_exact, opts.budget, score, r, best, best_set);

  if (best >= r.target && opts.k_max_search > r.size_cap_exact && opts.search_budget > 0) {
    r.method = "exact+annealing";
    r.size_cap_searched = opts.k_max_search;
    const std::size_t n = g.num_vertices();
    const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
    const std::uint64_t per_restart = std::max<std::uint64_t>(1, opts.search_budget / restarts);
    const double t_start = 0.5, t_end = 1e-4;
    const double cooling = std::pow(t_end / t_start, 1.0 / static_cast<double>(per_restart));
    TrackedSet set(g);
    for (std::size_t restart = 0; restart < restarts && best >= r.target; ++restart) {
      Engine rng(derive_seed(opts.seed, restart));
      set.clear();
      set.add(static_cast<Vertex>(bounded(rng, n)));
      double energy = score(set);
      double temperature = t_start;
      for (std::uint64_t step = 0; step < per_restart; ++step, temperature *= cooling) {
        ++r.proposals;
        const bool try_add = set.size() == 1 || (set.size() < opts.k_max_search && (rng() & 1U));
        Vertex w;
        if (try_add) {
          const Vertex u = set.members()[bounded(rng, set.size())];
          const auto nbrs = g.neighbors(u);
          if (nbrs.empty()) continue;
          w = nbrs[bounded(rng, nbrs.size())];
          if (set.contains(w)) continue;
          if (set.size() >= opts.k_max_search) continue;
          set.add(w);
        } else {
          w = set.members()[bounded(rng, set.size())];
          set.remove(w);
        }
        const double next = score(set);
        const double delta = next - energy;
        if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / temperature)) {
          energy = next;
          if (energy < best) {
            best = energy;
            best_set.assign(set.members().begin(), set.members().end());
            if (best < r.target) break;
          }
        } else if (try_add) {
          set.remove(w);
        } else {
          set.add(w);
        }
      }
    }
  }
  finish_verdict(r, best, best_set, best < r.target);
  return r;
}

BallGrowthReport ball_growth_check(const Graph& g, std::size_t k, double eps, std::size_t r, std::uint64_t sample_vertices,
                                   std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("eps must lie in (0, 1)");
  const std::size_t n = g.num_vertices();
  if (n == 0) throw InvalidInput("empty graph");
  BallGrowthReport rep;
  rep.k = k;
  rep.eps = eps;
  rep.radius = r;
  rep.bound = std::min(static_cast<double>(k), std::pow(eps, -3.0 * static_cast<double>(r)));
  rep.min_ball = std::numeric_limits<std::size_t>::max();
  const double d = host_degree(g);
  const double slack = eps * eps * eps;

  BallExplorer explorer(g);
  std::vector<char> mark(n, 0);
  Engine rng(seed);
  const bool all = sample_vertices >= n;
  const std::uint64_t count = all ? n : sample_vertices;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto v = all ? static_cast<Vertex>(i) : static_cast<Vertex>(bounded(rng, n));
    const auto ball_span = explorer.explore(v, r);
    const auto layers = explorer.layer_sizes();
    const std::size_t size = ball_span.size();
    ++rep.sampled;
    rep.min_ball = std::min(rep.min_ball, size);
    if (static_cast<double>(size) >= rep.bound) continue;
    ++rep.failures;
    if (rep.examples.size() >= 16) continue;
    BallFailure fail;
    fail.vertex = v;
    fail.ball_size = size;
    fail.attribution = "contradiction";
    // Look for an inner ball that already breaks the small-set expansion premise.
    for (std::size_t radius = 1; radius < layers.size() && !fail.witness; ++radius) {
      const std::size_t inner = layers[radius];
      if (inner > k) break;
      for (std::size_t j = 0; j < inner; ++j) mark[ball_span[j]] = 1;
      std::uint64_t boundary = 0;
      for (std::size_t j = 0; j < inner; ++j)
        for (Vertex w : g.neighbors(ball_span[j])) boundary += mark[w] ? 0 : 1;
      for (std::size_t j = 0; j < inner; ++j) mark[ball_span[j]] = 0;
      if (static_cast<double>(boundary) < (1.0 - slack) * d * static_cast<double>(inner)) {
        fail.attribution = "precondition_violated";
        fail.witness = std::vector<Vertex>(ball_span.begin(), ball_span.begin() + static_cast<std::ptrdiff_t>(inner));
        std::sort(fail.witness->begin(), fail.witness->end());
        fail.witness_radius = radius;
      }
    }
    rep.examples.push_back(std::move(fail));
  }
  if (rep.sampled == 0) rep.min_ball = 0;
  rep.holds = rep.failures == 0;
  return rep;
}

}  // namespace ercp
