#include "ercp/report_json.hpp"

#include <set>

#include "ercp/error.hpp"

namespace ercp {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InvalidInput("unknown key '" + key + "' in " + where);
}

template <class T>
void read_if(const Json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("config key '") + key + "' has the wrong type");
  }
}

template <class T>
void read_if(const Json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read_if(j, key, value);
  out = value;
}

}  // namespace

Json to_json(const ExpansionReport& r) {
  Json j;
  j["property"] = property_name(r.property);
  j["method"] = r.method;
  j["verdict"] = verdict_name(r.verdict);
  j["constant"] = r.constant;
  j["target"] = r.target;
  j["size_cap_exact"] = r.size_cap_exact;
  j["size_cap_searched"] = r.size_cap_searched;
  j["sets_examined"] = r.sets_examined;
  j["proposals"] = r.proposals;
  j["budget_exhausted"] = r.budget_exhausted;
  j["seed"] = r.seed;
  j["shards"] = r.shards;
  j["lambda2"] = optional_json(r.lambda2);
  j["witness"] = optional_json(r.witness);
  return j;
}

Json to_json(const SpectralEstimate& e) {
  return Json{{"lambda2", e.lambda2},
              {"rayleigh", e.rayleigh},
              {"residual", e.residual},
              {"iterations", e.iterations},
              {"converged", e.converged}};
}

Json to_json(const BallGrowthReport& r) {
  Json j{{"k", r.k},           {"eps", r.eps},           {"radius", r.radius},
         {"bound", r.bound},   {"sampled", r.sampled},   {"failures", r.failures},
         {"min_ball", r.min_ball}, {"holds", r.holds}};
  Json ex = Json::array();
  for (const auto& f : r.examples)
    ex.push_back({{"vertex", f.vertex},
                  {"ball_size", f.ball_size},
                  {"attribution", f.attribution},
                  {"witness_radius", f.witness_radius},
                  {"witness", optional_json(f.witness)}});
  j["examples"] = ex;
  return j;
}

Json to_json(const SurvivalSolution& s) {
  return Json{{"eps", s.eps},
              {"y", s.y},
              {"residual", s.residual},
              {"subcritical", s.subcritical},
              {"near_critical", s.near_critical},
              {"iterations", s.iterations}};
}

Json to_json(const MonteCarloEstimate& e) {
  return Json{{"estimate", e.estimate}, {"stderr", e.std_error}, {"survivors", e.survivors}, {"trials", e.trials}};
}

Json component_stats_json(const ComponentSummary& s, std::size_t top) {
  Json j{{"n", s.label.size()}, {"count", s.count()}, {"L1", s.largest()}, {"L2", s.second_largest()}};
  const std::size_t keep = top == 0 ? s.sizes.size() : std::min(top, s.sizes.size());
  j["sizes"] = std::vector<std::uint64_t>(s.sizes.begin(), s.sizes.begin() + static_cast<std::ptrdiff_t>(keep));
  j["sizes_truncated"] = keep < s.sizes.size();
  return j;
}

Json to_json(const SprinkleReport& r) {
  return Json{{"p", r.split.p},
              {"p1", r.split.p1},
              {"p2", r.split.p2},
              {"threshold", r.threshold},
              {"stage1_large_components", r.stage1_large_components},
              {"large_vertices", r.large_vertices},
              {"merged", r.merged},
              {"union_components_hit", r.union_components_hit},
              {"union", component_stats_json(r.union_summary)}};
}

Json to_json(const DenseReport& r) {
  return Json{{"radius", r.radius},       {"threshold", r.threshold},     {"probes", r.probes},
              {"min_hits", r.min_hits},   {"mean_hits", r.mean_hits},     {"zero_probes", r.zero_probes},
              {"zero_fraction", r.zero_fraction}};
}

Json to_json(const MatchingTrialReport& r, bool include_sizes) {
  Json j{{"q", r.q},
         {"d", r.d},
         {"delta", r.delta},
         {"f_size", r.f_size},
         {"trials", r.trials},
         {"bound", r.bound},
         {"failure_bound", r.failure_bound},
         {"min_size", r.min_size},
         {"max_size", r.max_size},
         {"mean_size", r.mean_size},
         {"below_bound", r.below_bound},
         {"below_bound_fraction", r.below_bound_fraction}};
  if (include_sizes) j["sizes"] = r.sizes;
  return j;
}

Json to_json(const FeasibilityReport& r) {
  return Json{{"n", r.params.n},
              {"d", r.params.d},
              {"c1_prime", r.params.c1_prime},
              {"class_size", r.params.class_size},
              {"classes", r.params.classes()},
              {"intra_degree", r.params.intra_degree()},
              {"eps", r.eps},
              {"p", r.p},
              {"isolation_probability", r.isolation_probability},
              {"expected_isolated", r.expected_isolated},
              {"intra_mean_offspring", r.intra_mean_offspring},
              {"desired_isolated", r.desired_isolated},
              {"class_exceeds_intra_degree", r.class_exceeds_intra_degree},
              {"class_supercritical", r.class_supercritical},
              {"enough_isolated", r.enough_isolated},
              {"checks", r.checks},
              {"problems", r.problems},
              {"feasible", r.feasible()}};
}

Json to_json(const PaperConstantFeasibility& r) {
  return Json{{"n", r.n},
              {"d", r.d},
              {"c1", r.c1},
              {"c1_prime", r.c1_prime},
              {"intra_degree", r.intra_degree},
              {"class_size", r.class_size},
              {"log_min_n_class_reaches_degree", r.log_min_n_class_reaches_degree},
              {"log_min_n_class_exceeds_intra_degree", r.log_min_n_class_exceeds_intra_degree},
              {"feasible", r.feasible},
              {"reason", r.reason}};
}

Json to_json(const TrialRecord& r) {
  Json j{{"trial_idx", r.trial_idx},
         {"seed", r.seed},
         {"n", r.n},
         {"d", r.d},
         {"eps", r.eps},
         {"p", r.p},
         {"L1", r.L1},
         {"L2", r.L2},
         {"component_count", r.component_count},
         {"gap_count", optional_json(r.gap_count)},
         {"merged", optional_json(r.merged)},
         {"isolated_class_count", optional_json(r.isolated_class_count)},
         {"max_isolated_internal", optional_json(r.max_isolated_internal)},
         {"wall_time_ms", optional_json(r.wall_time_ms)}};
  if (r.dense_min_hits) j["dense_min_hits"] = *r.dense_min_hits;
  if (r.dense_zero_fraction) j["dense_zero_fraction"] = *r.dense_zero_fraction;
  return j;
}

Json records_json(std::span<const TrialRecord> records) {
  Json a = Json::array();
  for (const auto& r : records) a.push_back(to_json(r));
  return a;
}

Json to_json(const ExperimentSummary& s) {
  return Json{{"trials", s.trials},
              {"n", s.n},
              {"d", s.d},
              {"eps", s.eps},
              {"p", s.p},
              {"mean_l1_fraction", s.mean_l1_fraction},
              {"stddev_l1_fraction", s.stddev_l1_fraction},
              {"stderr_l1_fraction", s.stderr_l1_fraction},
              {"min_L1", s.min_L1},
              {"max_L1", s.max_L1},
              {"max_L2", s.max_L2},
              {"unique_giant_fraction", s.unique_giant_fraction},
              {"merged_fraction", optional_json(s.merged_fraction)},
              {"gap_free_fraction", optional_json(s.gap_free_fraction)},
              {"mean_isolated_class_count", optional_json(s.mean_isolated_class_count)},
              {"max_isolated_internal", optional_json(s.max_isolated_internal)},
              {"dense_all_hit_fraction", optional_json(s.dense_all_hit_fraction)},
              {"y_reference", optional_json(s.y_reference)}};
}

Json to_json(const VerdictResult& v) {
  Json checks = Json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
  return Json{{"kind", v.kind}, {"pass", v.pass}, {"checks", checks}};
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("experiment config must be a JSON object");
  reject_unknown(j,
                 {"graph", "eps", "trials", "master_seed", "mode", "thresholds", "workers", "probes", "radius", "timing",
                  "verdict"},
                 "experiment config");
  ExperimentConfig c;
  if (!j.contains("graph")) throw InvalidInput("experiment config needs 'graph'");
  read_if(j, "graph", c.graph);
  read_if(j, "eps", c.eps);
  read_if(j, "trials", c.trials);
  read_if(j, "master_seed", c.master_seed);
  std::string mode;
  read_if(j, "mode", mode);
  if (!mode.empty()) c.mode = parse_mode(mode);
  read_if(j, "workers", c.workers);
  read_if(j, "probes", c.probes);
  read_if(j, "radius", c.radius);
  read_if(j, "timing", c.timing);
  if (j.contains("thresholds") && !j["thresholds"].is_null()) {
    const Json& t = j["thresholds"];
    reject_unknown(t, {"vl_threshold", "vl_constant", "vl_preset", "gap_lo", "gap_hi"}, "thresholds");
    read_if(t, "vl_threshold", c.thresholds.vl_threshold);
    read_if(t, "vl_constant", c.thresholds.vl_constant);
    if (t.contains("vl_preset")) {
      const auto preset = t["vl_preset"].get<std::string>();
      if (preset == "7")
        c.thresholds.vl_constant = 7.0;
      else if (preset == "14")
        c.thresholds.vl_constant = 14.0;
      else
        throw InvalidInput("vl_preset must be \"7\" or \"14\"");
    }
    read_if(t, "gap_lo", c.thresholds.gap_lo);
    read_if(t, "gap_hi", c.thresholds.gap_hi);
  }
  if (j.contains("verdict") && !j["verdict"].is_null()) {
    const Json& v = j["verdict"];
    reject_unknown(v, {"tol_giant", "c_second", "c_subcritical", "min_merged_fraction"}, "verdict");
    read_if(v, "tol_giant", c.verdict.tol_giant);
    read_if(v, "c_second", c.verdict.c_second);
    read_if(v, "c_subcritical", c.verdict.c_subcritical);
    read_if(v, "min_merged_fraction", c.verdict.min_merged_fraction);
  }
  return c;
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"graph", c.graph},
              {"eps", c.eps},
              {"trials", c.trials},
              {"master_seed", c.master_seed},
              {"mode", mode_name(c.mode)},
              {"thresholds",
               {{"vl_threshold", optional_json(c.thresholds.vl_threshold)},
                {"vl_constant", c.thresholds.vl_constant},
                {"gap_lo", optional_json(c.thresholds.gap_lo)},
                {"gap_hi", optional_json(c.thresholds.gap_hi)}}},
              {"workers", c.workers},
              {"probes", c.probes},
              {"radius", optional_json(c.radius)},
              {"timing", c.timing},
              {"verdict",
               {{"tol_giant", c.verdict.tol_giant},
                {"c_second", c.verdict.c_second},
                {"c_subcritical", c.verdict.c_subcritical},
                {"min_merged_fraction", c.verdict.min_merged_fraction}}}};
}

Json experiment_summary_json(const ExperimentResult& r) {
  Json host{{"n", r.host.n}, {"d", r.host.d}, {"p", r.host.p}, {"class_size", optional_json(r.host.class_size)},
            {"vl_threshold", r.host.vl_threshold}};
  if (r.config.mode == Mode::gap) {
    host["gap_lo"] = r.host.gap_lo;
    host["gap_hi"] = r.host.gap_hi;
  }
  return Json{{"config", to_json(r.config)},
              {"host", host},
              {"summary", to_json(r.summary)},
              {"verdict", to_json(r.verdict)}};
}

}  // namespace ercp
