#pragma once

#include <span>

#include "json.hpp"

#include "ercp/branching.hpp"
#include "ercp/components.hpp"
#include "ercp/expansion.hpp"
#include "ercp/experiments.hpp"
#include "ercp/generators.hpp"
#include "ercp/matching.hpp"
#include "ercp/percolation.hpp"

namespace ercp {

using Json = nlohmann::ordered_json;

Json to_json(const ExpansionReport& r);
Json to_json(const SpectralEstimate& e);
Json to_json(const BallGrowthReport& r);
Json to_json(const SurvivalSolution& s);
Json to_json(const MonteCarloEstimate& e);
/// Counts and the largest sizes; the full size list only when `top` is 0.
Json component_stats_json(const ComponentSummary& s, std::size_t top = 10);
Json to_json(const SprinkleReport& r);
Json to_json(const DenseReport& r);
Json to_json(const MatchingTrialReport& r, bool include_sizes = false);
Json to_json(const FeasibilityReport& r);
Json to_json(const PaperConstantFeasibility& r);
Json to_json(const TrialRecord& r);
Json to_json(const ExperimentSummary& s);
Json to_json(const VerdictResult& v);
Json records_json(std::span<const TrialRecord> records);

/// Config JSON uses the ExperimentConfig field names: graph, eps, trials,
/// master_seed, mode, thresholds {vl_threshold, vl_constant, gap_lo, gap_hi},
/// workers, probes, radius, timing, verdict {tol_giant, c_second,
/// c_subcritical, min_merged_fraction}. Unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& c);

/// Summary file: config, host parameters, summary and verdict.
Json experiment_summary_json(const ExperimentResult& r);

}  // namespace ercp
