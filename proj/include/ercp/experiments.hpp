#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ercp/graph.hpp"

namespace ercp {

enum class Mode { ercp, subcritical, gap, sprinkle, anomaly, dense };

std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view text);

struct Thresholds {
  /// Absolute V_L threshold; overrides vl_constant.
  std::optional<double> vl_threshold;
  /// c in c ln(n) / eps^2; 7 by default, 14 for the stricter preset.
  double vl_constant = 7.0;
  std::optional<double> gap_lo;
  std::optional<double> gap_hi;
};

struct VerdictParams {
  double tol_giant = 0.02;
  double c_second = 30.0;
  double c_subcritical = 30.0;
  double min_merged_fraction = 0.95;
};

struct ExperimentConfig {
  /// Generator spec or graph file path.
  std::string graph;
  double eps = 0.1;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  Mode mode = Mode::ercp;
  Thresholds thresholds;
  std::size_t workers = 1;
  /// dense mode
  std::uint64_t probes = 1000;
  std::optional<std::size_t> radius;
  /// Fill wall_time_ms (makes CSV output run-dependent).
  bool timing = false;
  /// Keep the full component size histogram of every trial.
  bool keep_sizes = false;
  VerdictParams verdict;
};

struct TrialRecord {
  std::uint64_t trial_idx = 0;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  double eps = 0;
  double p = 0;
  std::uint64_t L1 = 0;
  std::uint64_t L2 = 0;
  std::uint64_t component_count = 0;
  std::optional<std::uint64_t> gap_count;
  std::optional<bool> merged;
  std::optional<std::uint64_t> isolated_class_count;
  std::optional<std::uint64_t> max_isolated_internal;
  std::optional<double> wall_time_ms;

  // Not part of the CSV schema.
  std::optional<std::uint64_t> dense_min_hits;
  std::optional<double> dense_zero_fraction;
  /// (size, count) pairs, ascending by size, when keep_sizes is set.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> size_counts;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Pure fold over trial records; independent of record order.
struct ExperimentSummary {
  std::uint64_t trials = 0;
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  double eps = 0;
  double p = 0;
  double mean_l1_fraction = 0;
  double stddev_l1_fraction = 0;
  double stderr_l1_fraction = 0;
  std::uint64_t min_L1 = 0;
  std::uint64_t max_L1 = 0;
  std::uint64_t max_L2 = 0;
  /// Fraction of trials with L2 <= 0.1 L1.
  double unique_giant_fraction = 0;
  std::optional<double> merged_fraction;
  std::optional<double> gap_free_fraction;
  std::optional<double> mean_isolated_class_count;
  std::optional<std::uint64_t> max_isolated_internal;
  /// dense mode: fraction of trials in which every probe met a large component.
  std::optional<double> dense_all_hit_fraction;
  std::optional<double> y_reference;
};

ExperimentSummary summarize_records(std::span<const TrialRecord> records);

struct VerdictCheck {
  std::string name;
  double value = 0;
  double limit = 0;
  bool pass = false;
};

struct VerdictResult {
  std::string kind;
  bool pass = false;
  std::vector<VerdictCheck> checks;
};

/// PASS iff |mean L1/n - y(eps)| <= tol_giant, max L2 <= c_second ln(n)/eps^2
/// and every trial has L2 <= 0.1 L1.
VerdictResult ercp_verdict(const ExperimentSummary& s, double eps, double tol_giant = 0.02, double c_second = 30.0);
/// PASS iff max L1 <= c ln(n) / eps_abs^2.
VerdictResult subcritical_verdict(const ExperimentSummary& s, double eps_abs, double c = 30.0);

/// Host graph built once per experiment. Complete graphs are kept implicit.
struct PreparedHost {
  std::string spec;
  std::size_t n = 0;
  std::size_t d = 0;
  std::optional<std::size_t> class_size;
  std::shared_ptr<const Graph> graph;  // null for an implicit complete graph
  double p = 0;
  double gap_lo = 0;
  double gap_hi = 0;
  double vl_threshold = 0;
};

PreparedHost prepare_host(const ExperimentConfig& config);

TrialRecord run_trial(const ExperimentConfig& config, const PreparedHost& host, std::uint64_t trial_idx);

struct ExperimentResult {
  ExperimentConfig config;
  PreparedHost host;
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
  VerdictResult verdict;
};

VerdictResult mode_verdict(const ExperimentConfig& config, const ExperimentSummary& summary);

ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const PreparedHost& host);

/// Thrown when a trial fails; carries the records that completed, sorted.
class TrialFailure : public std::runtime_error {
 public:
  TrialFailure(const std::string& what, std::vector<TrialRecord> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<TrialRecord>& partial() const { return partial_; }

 private:
  std::vector<TrialRecord> partial_;
};

}  // namespace ercp
