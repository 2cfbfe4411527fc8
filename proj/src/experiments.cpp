#include "ercp/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "ercp/branching.hpp"
#include "ercp/components.hpp"
#include "ercp/error.hpp"
#include "ercp/generators.hpp"
#include "ercp/graph_io.hpp"
#include "ercp/percolation.hpp"
#include "ercp/random.hpp"

namespace ercp {

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 6> kModes{{
    {Mode::ercp, "ercp"},
    {Mode::subcritical, "subcritical"},
    {Mode::gap, "gap"},
    {Mode::sprinkle, "sprinkle"},
    {Mode::anomaly, "anomaly"},
    {Mode::dense, "dense"},
}};

double ln(double x) { return std::log(x); }

void fill_from_summary(TrialRecord& rec, const ComponentSummary& s) {
  rec.L1 = s.largest();
  rec.L2 = s.second_largest();
  rec.component_count = s.count();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> size_histogram(const ComponentSummary& s) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto it = s.sizes.rbegin(); it != s.sizes.rend(); ++it) {
    if (out.empty() || out.back().first != *it)
      out.emplace_back(*it, 1);
    else
      ++out.back().second;
  }
  return out;
}

}  // namespace

std::string_view mode_name(Mode m) {
  for (auto [mode, name] : kModes)
    if (mode == m) return name;
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (auto [mode, name] : kModes)
    if (name == text) return mode;
  throw InvalidInput("unknown mode '" + std::string(text) + "'");
}

PreparedHost prepare_host(const ExperimentConfig& config) {
  if (config.trials == 0) throw InvalidInput("trials must be at least 1");
  if (config.workers == 0) throw InvalidInput("workers must be at least 1");
  if (!std::isfinite(config.eps)) throw InvalidInput("eps must be finite");
  PreparedHost host;
  host.spec = config.graph;
  if (GeneratorSpec::is_spec(config.graph)) {
    const GeneratorSpec spec = GeneratorSpec::parse(config.graph);
    if (spec.family() == Family::complete) {
      host.n = static_cast<std::size_t>(spec.integer("n"));
      if (host.n < 2) throw InvalidInput("complete graph needs n >= 2");
      if (host.n > std::numeric_limits<Vertex>::max()) throw InvalidInput("n exceeds 32-bit vertex ids");
      host.d = host.n - 1;
    } else {
      GeneratedGraph gen = generate(spec);
      host.class_size = gen.class_size;
      host.graph = std::make_shared<const Graph>(std::move(gen.graph));
    }
  } else {
    host.graph = std::make_shared<const Graph>(read_graph_file(config.graph));
  }
  if (host.graph) {
    host.n = host.graph->num_vertices();
    host.d = host.graph->regular_degree().value_or(host.graph->max_degree());
  }
  if (host.d == 0) throw InvalidInput("host graph has no edges");

  host.p = (1.0 + config.eps) / static_cast<double>(host.d);
  if (!(host.p >= 0.0 && host.p <= 1.0))
    throw InvalidInput("p = (1 + eps)/d = " + std::to_string(host.p) + " lies outside [0, 1]");

  const Mode mode = config.mode;
  if (mode == Mode::subcritical) {
    if (!(config.eps < 0.0)) throw InvalidInput("subcritical mode needs eps < 0");
  } else if (!(config.eps > 0.0)) {
    throw InvalidInput(std::string(mode_name(mode)) + " mode needs eps > 0");
  }
  if (!host.graph && (mode == Mode::anomaly || mode == Mode::dense))
    throw InvalidInput(std::string(mode_name(mode)) + " mode needs an explicit host graph, not complete:n=...");
  if (mode == Mode::anomaly && !host.class_size)
    throw InvalidInput("anomaly mode needs a host with a class partition (anomaly or disjoint_cliques)");

  const double log_n = ln(static_cast<double>(host.n));
  const double eps2 = config.eps * config.eps;
  if (config.eps != 0.0)
    host.vl_threshold = config.thresholds.vl_threshold.value_or(config.thresholds.vl_constant * log_n / eps2);
  if (mode == Mode::gap) {
    host.gap_lo = config.thresholds.gap_lo.value_or(14.0 * log_n / eps2);
    host.gap_hi = config.thresholds.gap_hi.value_or(static_cast<double>(host.d) * log_n);
    if (host.gap_lo > host.gap_hi)
      throw InvalidInput("gap window is empty: lo = " + std::to_string(host.gap_lo) + " exceeds hi = " +
                         std::to_string(host.gap_hi) + "; this needs d to be of order at least ln(n)/eps^2");
  }
  return host;
}

TrialRecord run_trial(const ExperimentConfig& config, const PreparedHost& host, std::uint64_t trial_idx) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial_idx = trial_idx;
  rec.seed = derive_seed(config.master_seed, trial_idx);
  rec.n = host.n;
  rec.d = host.d;
  rec.eps = config.eps;
  rec.p = host.p;

  ComponentSummary summary;
  if (!host.graph) {
    if (config.mode == Mode::sprinkle) {
      const ExposurePair split = double_exposure_split(host.p, config.eps, static_cast<double>(host.d));
      Engine rng1(derive_seed(rec.seed, 1));
      Engine rng2(derive_seed(rec.seed, 2));
      std::vector<Edge> edges = sample_complete_graph_edges(host.n, split.p1, rng1);
      const ComponentSummary stage1 = components_of_edges(host.n, edges);
      const std::vector<Edge> extra = sample_complete_graph_edges(host.n, split.p2, rng2);
      edges.insert(edges.end(), extra.begin(), extra.end());
      summary = components_of_edges(host.n, edges);
      std::uint32_t seen = std::numeric_limits<std::uint32_t>::max();
      bool merged = true;
      for (std::size_t v = 0; v < host.n && merged; ++v) {
        if (static_cast<double>(stage1.component_size_of(static_cast<Vertex>(v))) < host.vl_threshold) continue;
        const std::uint32_t label = summary.label[v];
        if (seen == std::numeric_limits<std::uint32_t>::max()) seen = label;
        merged = label == seen;
      }
      rec.merged = merged;
    } else {
      Engine rng(derive_seed(rec.seed, 4));
      const std::vector<Edge> edges = sample_complete_graph_edges(host.n, host.p, rng);
      summary = components_of_edges(host.n, edges);
    }
  } else {
    const Graph& g = *host.graph;
    if (config.mode == Mode::sprinkle) {
      SprinkleReport rep = sprinkle_merge_stat(g, host.p, config.eps, rec.seed, host.vl_threshold);
      rec.merged = rep.merged;
      summary = std::move(rep.union_summary);
    } else {
      const PercolationSample sample = percolate(g, host.p, rec.seed);
      summary = components(sample);
      if (config.mode == Mode::anomaly) {
        const std::size_t nc = *host.class_size;
        const std::size_t classes = host.n / nc;
        std::vector<char> exposed(classes, 0);
        const auto words = sample.retained.words();
        g.for_each_edge([&](EdgeId e, Vertex u, Vertex v) {
          if (u / nc != v / nc && ((words[e >> 6] >> (e & 63)) & 1U)) exposed[u / nc] = exposed[v / nc] = 1;
        });
        std::uint64_t isolated = 0;
        std::uint64_t largest_inside = 0;
        for (std::size_t j = 0; j < classes; ++j) {
          if (exposed[j]) continue;
          ++isolated;
          for (std::size_t v = j * nc; v < (j + 1) * nc; ++v)
            largest_inside = std::max(largest_inside, summary.component_size_of(static_cast<Vertex>(v)));
        }
        rec.isolated_class_count = isolated;
        rec.max_isolated_internal = largest_inside;
      } else if (config.mode == Mode::dense) {
        const std::size_t radius = config.radius.value_or(default_dense_radius(host.n, host.d));
        const DenseReport rep =
            everywhere_dense_stat(g, summary, radius, host.vl_threshold, config.probes, derive_seed(rec.seed, 3));
        rec.dense_min_hits = rep.min_hits;
        rec.dense_zero_fraction = rep.zero_fraction;
      }
    }
  }
  fill_from_summary(rec, summary);
  if (config.mode == Mode::gap) {
    std::uint64_t count = gap_scan(summary, host.gap_lo, host.gap_hi);
    // The giant itself is not part of the gap statement.
    const double largest = static_cast<double>(summary.largest());
    if (count > 0 && largest >= host.gap_lo && largest <= host.gap_hi) --count;
    rec.gap_count = count;
  }
  if (config.keep_sizes) rec.size_counts = size_histogram(summary);
  if (config.timing)
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

ExperimentSummary summarize_records(std::span<const TrialRecord> records) {
  ExperimentSummary s;
  s.trials = records.size();
  if (records.empty()) return s;
  std::vector<const TrialRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return a->trial_idx < b->trial_idx; });
  const TrialRecord& first = *sorted.front();
  s.n = first.n;
  s.d = first.d;
  s.eps = first.eps;
  s.p = first.p;
  s.min_L1 = first.L1;
  double sum = 0;
  std::uint64_t unique = 0, merged_n = 0, merged_yes = 0, gap_n = 0, gap_free = 0, iso_n = 0, dense_n = 0,
                dense_ok = 0;
  double iso_sum = 0;
  std::optional<std::uint64_t> max_inside;
  for (const TrialRecord* r : sorted) {
    sum += static_cast<double>(r->L1) / static_cast<double>(r->n);
    s.min_L1 = std::min(s.min_L1, r->L1);
    s.max_L1 = std::max(s.max_L1, r->L1);
    s.max_L2 = std::max(s.max_L2, r->L2);
    if (static_cast<double>(r->L2) <= 0.1 * static_cast<double>(r->L1)) ++unique;
    if (r->merged) {
      ++merged_n;
      merged_yes += *r->merged ? 1 : 0;
    }
    if (r->gap_count) {
      ++gap_n;
      gap_free += *r->gap_count == 0 ? 1 : 0;
    }
    if (r->isolated_class_count) {
      ++iso_n;
      iso_sum += static_cast<double>(*r->isolated_class_count);
    }
    if (r->max_isolated_internal) max_inside = std::max(max_inside.value_or(0), *r->max_isolated_internal);
    if (r->dense_zero_fraction) {
      ++dense_n;
      dense_ok += *r->dense_zero_fraction == 0.0 ? 1 : 0;
    }
  }
  const auto t = static_cast<double>(s.trials);
  s.mean_l1_fraction = sum / t;
  double sq = 0;
  for (const TrialRecord* r : sorted) {
    const double x = static_cast<double>(r->L1) / static_cast<double>(r->n) - s.mean_l1_fraction;
    sq += x * x;
  }
  s.stddev_l1_fraction = s.trials > 1 ? std::sqrt(sq / (t - 1.0)) : 0.0;
  s.stderr_l1_fraction = s.stddev_l1_fraction / std::sqrt(t);
  s.unique_giant_fraction = static_cast<double>(unique) / t;
  if (merged_n > 0) s.merged_fraction = static_cast<double>(merged_yes) / static_cast<double>(merged_n);
  if (gap_n > 0) s.gap_free_fraction = static_cast<double>(gap_free) / static_cast<double>(gap_n);
  if (iso_n > 0) s.mean_isolated_class_count = iso_sum / static_cast<double>(iso_n);
  s.max_isolated_internal = max_inside;
  if (dense_n > 0) s.dense_all_hit_fraction = static_cast<double>(dense_ok) / static_cast<double>(dense_n);
  if (s.eps > 0) s.y_reference = survival_probability(s.eps).y;
  return s;
}

VerdictResult ercp_verdict(const ExperimentSummary& s, double eps, double tol_giant, double c_second) {
  if (!(eps > 0.0)) throw InvalidInput("ercp verdict needs eps > 0");
  VerdictResult v;
  v.kind = "ercp";
  const double y = survival_probability(eps).y;
  const double second_limit = c_second * ln(static_cast<double>(s.n)) / (eps * eps);
  v.checks.push_back({"giant_margin", std::abs(s.mean_l1_fraction - y), tol_giant,
                      std::abs(s.mean_l1_fraction - y) <= tol_giant});
  v.checks.push_back({"max_second", static_cast<double>(s.max_L2), second_limit,
                      static_cast<double>(s.max_L2) <= second_limit});
  v.checks.push_back({"unique_giant_fraction", s.unique_giant_fraction, 1.0, s.unique_giant_fraction >= 1.0});
  v.pass = std::all_of(v.checks.begin(), v.checks.end(), [](const VerdictCheck& c) { return c.pass; });
  return v;
}

VerdictResult subcritical_verdict(const ExperimentSummary& s, double eps_abs, double c) {
  if (!(eps_abs > 0.0)) throw InvalidInput("subcritical verdict needs eps_abs > 0");
  VerdictResult v;
  v.kind = "subcritical";
  const double limit = c * ln(static_cast<double>(s.n)) / (eps_abs * eps_abs);
  v.checks.push_back({"max_largest", static_cast<double>(s.max_L1), limit, static_cast<double>(s.max_L1) <= limit});
  v.pass = v.checks.back().pass;
  return v;
}

VerdictResult mode_verdict(const ExperimentConfig& config, const ExperimentSummary& summary) {
  const VerdictParams& vp = config.verdict;
  switch (config.mode) {
    case Mode::ercp:
    case Mode::anomaly: {
      VerdictResult v = ercp_verdict(summary, config.eps, vp.tol_giant, vp.c_second);
      v.kind = mode_name(config.mode);
      return v;
    }
    case Mode::subcritical: return subcritical_verdict(summary, std::abs(config.eps), vp.c_subcritical);
    case Mode::gap: {
      VerdictResult v;
      v.kind = "gap";
      const double f = summary.gap_free_fraction.value_or(0.0);
      v.checks.push_back({"gap_free_fraction", f, 1.0, f >= 1.0});
      v.pass = v.checks.back().pass;
      return v;
    }
    case Mode::sprinkle: {
      VerdictResult v = ercp_verdict(summary, config.eps, vp.tol_giant, vp.c_second);
      v.kind = "sprinkle";
      const double f = summary.merged_fraction.value_or(0.0);
      v.checks.push_back({"merged_fraction", f, vp.min_merged_fraction, f >= vp.min_merged_fraction});
      v.pass = v.pass && v.checks.back().pass;
      return v;
    }
    case Mode::dense: {
      VerdictResult v;
      v.kind = "dense";
      const double f = summary.dense_all_hit_fraction.value_or(0.0);
      v.checks.push_back({"all_probes_hit_fraction", f, 1.0, f >= 1.0});
      v.pass = v.checks.back().pass;
      return v;
    }
  }
  throw InvalidInput("unknown mode");
}

ExperimentResult run_experiment(const ExperimentConfig& config) { return run_experiment(config, prepare_host(config)); }

ExperimentResult run_experiment(const ExperimentConfig& config, const PreparedHost& host) {
  ExperimentResult result;
  result.config = config;
  result.host = host;
  std::vector<TrialRecord> records(config.trials);
  std::vector<char> done(config.trials, 0);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string error;

  auto worker = [&] {
    while (!failed.load()) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= config.trials) return;
      try {
        records[idx] = run_trial(config, host, idx);
        done[idx] = 1;
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (!failed.exchange(true)) error = "trial " + std::to_string(idx) + ": " + e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::uint64_t>(config.workers, config.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed) {
    std::vector<TrialRecord> partial;
    for (std::uint64_t i = 0; i < config.trials; ++i)
      if (done[i]) partial.push_back(std::move(records[i]));
    throw TrialFailure(error, std::move(partial));
  }
  result.records = std::move(records);
  result.summary = summarize_records(result.records);
  result.verdict = mode_verdict(config, result.summary);
  return result;
}

}  // namespace ercp
