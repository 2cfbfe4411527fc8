#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ercp/branching.hpp"
#include "ercp/error.hpp"
#include "ercp/expansion.hpp"
#include "ercp/experiments.hpp"
#include "ercp/generators.hpp"
#include "ercp/graph_io.hpp"
#include "ercp/matching.hpp"
#include "ercp/percolation.hpp"
#include "ercp/records_io.hpp"
#include "ercp/report_json.hpp"

namespace {

using namespace ercp;

constexpr int kExitFail = 2;
constexpr int kExitError = 1;

Graph load_graph(const std::string& text) {
  if (GeneratorSpec::is_spec(text)) return generate(GeneratorSpec::parse(text)).graph;
  return read_graph_file(text);
}

void print(const Json& j) { std::cout << j.dump() << '\n'; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

struct GenerateArgs {
  std::string graph;
  std::string out;
};

struct CertifyArgs {
  std::string graph;
  std::string property = "p3";
  std::string method = "exact";
  std::size_t kmax = 8;
  std::size_t kmax_search = 0;
  double slack = 1e-3;
  std::uint64_t budget = 1'000'000;
  std::uint64_t search_budget = 1'000'000;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  std::optional<double> target;
};

struct BallArgs {
  std::string graph;
  std::size_t k = 0;
  double eps = 0.1;
  std::size_t radius = 1;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
};

struct GwArgs {
  double eps = 0.1;
  bool mc = false;
  bool tree = false;
  std::size_t d = 100;
  double p = 0.011;
  std::size_t depth = 200;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct PercolateArgs {
  std::string graph;
  double p = 0;
  std::uint64_t seed = 0;
  bool stats = false;
  std::string dump_edges;
};

struct ExperimentArgs {
  std::string config;
  std::string graph;
  double eps = 0.1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string mode = "ercp";
  std::string out;
  std::string summary;
  std::string dump_sizes;
  std::string records_json;
  std::size_t workers = 1;
  bool timing = false;
  std::optional<double> vl_threshold;
  std::optional<double> gap_lo;
  std::optional<double> gap_hi;
  std::string vl_preset;
  std::uint64_t probes = 1000;
  std::optional<std::size_t> radius;
};

struct FeasibilityArgs {
  std::size_t n = 0, d = 0, c1p = 0, nc = 0;
  double eps = 0.2;
  double desired = 1.0;
  std::optional<double> paper_c1;
};

struct MatchingArgs {
  std::string graph;
  std::size_t f_size = 2000;
  double delta = 0.3;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
};

int run_generate(const GenerateArgs& a) {
  const GeneratedGraph gen = generate(GeneratorSpec::parse(a.graph));
  if (!a.out.empty()) {
    write_graph_file(a.out, gen.graph);
  } else {
    write_graph(std::cout, gen.graph);
    return 0;
  }
  const auto d = gen.graph.regular_degree();
  print(Json{{"graph", a.graph},
             {"n", gen.graph.num_vertices()},
             {"m", gen.graph.num_edges()},
             {"regular_degree", d ? Json(*d) : Json(nullptr)},
             {"class_size", gen.class_size ? Json(*gen.class_size) : Json(nullptr)},
             {"out", a.out}});
  return 0;
}

int run_certify(const CertifyArgs& a) {
  const Graph g = load_graph(a.graph);
  ExpansionReport r;
  if (a.property == "p1") {
    P1Options o;
    if (a.method == "exact")
      o.method = P1Method::exact;
    else if (a.method == "spectral")
      o.method = P1Method::spectral;
    else if (a.method == "search")
      o.method = P1Method::search;
    else
      throw InvalidInput("unknown P1 method '" + a.method + "'");
    o.budget = a.budget;
    o.seed = a.seed;
    if (a.target) o.target = *a.target;
    r = certify_global_expansion(g, o);
  } else if (a.property == "p2") {
    P2Options o;
    o.k_max = a.kmax;
    o.budget = a.budget;
    if (a.target) o.c3_target = *a.target;
    r = certify_vertex_expansion(g, o);
  } else if (a.property == "p3") {
    P3Options o;
    o.k_max_exact = a.kmax;
    o.k_max_search = a.kmax_search;
    o.slack = a.slack;
    o.budget = a.budget;
    o.search_budget = a.search_budget;
    o.restarts = a.restarts;
    o.seed = a.seed;
    r = certify_small_set_expansion(g, o);
  } else {
    throw InvalidInput("unknown property '" + a.property + "'");
  }
  Json j = to_json(r);
  j["graph"] = a.graph;
  print(j);
  return 0;
}

int run_balls(const BallArgs& a) {
  const Graph g = load_graph(a.graph);
  Json j = to_json(ball_growth_check(g, a.k, a.eps, a.radius, a.samples, a.seed));
  j["graph"] = a.graph;
  print(j);
  return 0;
}

int run_gw(const GwArgs& a) {
  if (a.mc) {
    const MonteCarloEstimate e = gw_survival_monte_carlo(a.d, a.p, a.depth, a.trials, a.seed);
    Json j = to_json(e);
    j["d"] = a.d;
    j["p"] = a.p;
    j["depth_cap"] = a.depth;
    j["seed"] = a.seed;
    const double eps = a.p * static_cast<double>(a.d) - 1.0;
    j["y_reference"] = survival_probability(eps).y;
    j["regular_tree_reference"] = regular_tree_survival(a.d, a.p);
    print(j);
    return 0;
  }
  std::cout.precision(12);
  if (a.tree) {
    // percolation at p = (1 + eps)/d on the d-regular tree
    std::cout << std::fixed << regular_tree_survival(a.d, (1.0 + a.eps) / static_cast<double>(a.d)) << '\n';
    return 0;
  }
  const SurvivalSolution s = survival_probability(a.eps);
  std::cout << std::fixed << s.y << '\n';
  return 0;
}

int run_percolate(const PercolateArgs& a) {
  const Graph g = load_graph(a.graph);
  const PercolationSample s = percolate(g, a.p, a.seed);
  Json j{{"graph", a.graph},
         {"n", g.num_vertices()},
         {"m", g.num_edges()},
         {"p", a.p},
         {"seed", a.seed},
         {"retained", s.retained_count()}};
  const ComponentSummary c = components(s);
  j["components"] = component_stats_json(c, a.stats ? 0 : 10);
  if (!a.dump_edges.empty()) {
    std::string text;
    for (EdgeId e : s.retained_ids()) text += std::to_string(e) + '\n';
    write_text_file(a.dump_edges, text);
    j["dump_edges"] = a.dump_edges;
  }
  print(j);
  return 0;
}

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig c;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw InvalidInput("cannot open config " + a.config);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput("config " + a.config + " is not valid JSON: " + e.what());
    }
    c = config_from_json(j);
  } else {
    if (a.graph.empty()) throw InvalidInput("experiment needs --config or --graph");
    c.graph = a.graph;
    c.eps = a.eps;
    c.trials = a.trials;
    c.master_seed = a.seed;
    c.mode = parse_mode(a.mode);
    c.workers = a.workers;
    c.probes = a.probes;
    c.radius = a.radius;
    c.thresholds.vl_threshold = a.vl_threshold;
    c.thresholds.gap_lo = a.gap_lo;
    c.thresholds.gap_hi = a.gap_hi;
    if (a.vl_preset == "14")
      c.thresholds.vl_constant = 14.0;
    else if (!a.vl_preset.empty() && a.vl_preset != "7")
      throw InvalidInput("--vl-preset must be 7 or 14");
  }
  if (a.timing) c.timing = true;
  c.keep_sizes = !a.dump_sizes.empty();

  ExperimentResult r;
  try {
    r = run_experiment(c);
  } catch (const TrialFailure& e) {
    if (!a.out.empty()) write_records_csv_file(a.out, e.partial());
    throw;
  }
  if (!a.out.empty()) write_records_csv_file(a.out, r.records);
  if (!a.dump_sizes.empty()) write_size_dump_file(a.dump_sizes, r.records);
  if (!a.records_json.empty()) write_text_file(a.records_json, records_json(r.records).dump(1) + '\n');
  const Json summary = experiment_summary_json(r);
  if (!a.summary.empty()) write_text_file(a.summary, summary.dump(2) + '\n');
  print(summary);
  return r.verdict.pass ? 0 : kExitFail;
}

int run_feasibility(const FeasibilityArgs& a) {
  Json j;
  if (a.n > 0) {
    const AnomalyParams params{a.n, a.d, a.c1p, a.nc};
    j["construction"] = to_json(construction_feasibility(params, a.eps, a.desired));
  }
  if (a.paper_c1) {
    if (a.n == 0 || a.d == 0) throw InvalidInput("--paper-c1 needs --n and --d");
    j["paper_constants"] =
        to_json(paper_constant_feasibility(static_cast<double>(a.n), static_cast<double>(a.d), *a.paper_c1));
  }
  if (j.is_null()) throw InvalidInput("feasibility needs --n, --d, --c1p, --nc and/or --paper-c1");
  print(j);
  return 0;
}

int run_matching(const MatchingArgs& a) {
  const Graph g = load_graph(a.graph);
  const double d = static_cast<double>(g.regular_degree().value_or(g.max_degree()));
  if (a.f_size > g.num_edges()) throw InvalidInput("--f-size exceeds the edge count");
  // F: a uniformly random f_size-subset of edge ids (partial Fisher-Yates).
  Engine rng(derive_seed(a.seed, 0));
  std::vector<EdgeId> ids(g.num_edges());
  for (EdgeId e = 0; e < ids.size(); ++e) ids[e] = e;
  for (std::size_t i = 0; i < a.f_size; ++i) std::swap(ids[i], ids[i + bounded(rng, ids.size() - i)]);
  ids.resize(a.f_size);
  Json j = to_json(percolated_matching_trial(g, ids, a.delta / d, derive_seed(a.seed, 1), a.trials));
  j["graph"] = a.graph;
  print(j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bond percolation experiments on regular host graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Build a graph from a generator spec");
  g->add_option("--graph", gen.graph, "Generator spec, e.g. hypercube:d=10")->required();
  g->add_option("--out", gen.out, "Output graph file (stdout when omitted)");

  CertifyArgs cert;
  auto* c = app.add_subcommand("certify", "Check an expansion property");
  c->add_option("--graph", cert.graph, "Graph file or generator spec")->required();
  c->add_option("--property", cert.property)->check(CLI::IsMember({"p1", "p2", "p3"}));
  c->add_option("--method", cert.method, "P1 method: exact, spectral or search");
  c->add_option("--kmax", cert.kmax, "Exhaustive size cap (P2, P3)");
  c->add_option("--kmax-search", cert.kmax_search, "Annealing size cap (P3)");
  c->add_option("--slack", cert.slack, "P3 slack");
  c->add_option("--budget", cert.budget, "Enumeration budget, or proposals for P1 search");
  c->add_option("--search-budget", cert.search_budget, "Annealing proposals (P3)");
  c->add_option("--restarts", cert.restarts, "Annealing restarts (P3)");
  c->add_option("--seed", cert.seed);
  c->add_option("--target", cert.target, "Violation threshold for P1 (c1) or P2 (c3)");

  BallArgs balls;
  auto* b = app.add_subcommand("balls", "Check ball growth |B(v,r)| >= min(k, eps^-3r)");
  b->add_option("--graph", balls.graph)->required();
  b->add_option("--k", balls.k)->required();
  b->add_option("--eps", balls.eps);
  b->add_option("--radius", balls.radius);
  b->add_option("--samples", balls.samples);
  b->add_option("--seed", balls.seed);

  GwArgs gw;
  auto* w = app.add_subcommand("gw", "Branching-process survival probability");
  w->add_option("--eps", gw.eps);
  w->add_flag("--mc", gw.mc, "Monte Carlo with Bin(d, p) offspring");
  w->add_flag("--tree", gw.tree, "Root survival on the d-regular tree at p = (1 + eps)/d");
  w->add_option("--d", gw.d);
  w->add_option("--p", gw.p);
  w->add_option("--depth", gw.depth);
  w->add_option("--trials", gw.trials);
  w->add_option("--seed", gw.seed);

  PercolateArgs perc;
  auto* p = app.add_subcommand("percolate", "One bond percolation sample");
  p->add_option("--graph", perc.graph)->required();
  p->add_option("--p", perc.p)->required();
  p->add_option("--seed", perc.seed);
  p->add_flag("--stats", perc.stats, "Include every component size");
  p->add_option("--dump-edges", perc.dump_edges, "Write retained edge ids, one per line");

  ExperimentArgs ex;
  auto* e = app.add_subcommand("experiment", "Run a batch of percolation trials");
  e->add_option("--config", ex.config, "JSON config");
  e->add_option("--graph", ex.graph);
  e->add_option("--eps", ex.eps);
  e->add_option("--trials", ex.trials);
  e->add_option("--seed", ex.seed);
  e->add_option("--mode", ex.mode)->check(CLI::IsMember({"ercp", "subcritical", "gap", "sprinkle", "anomaly", "dense"}));
  e->add_option("--out", ex.out, "Records CSV");
  e->add_option("--summary", ex.summary, "Summary JSON");
  e->add_option("--records-json", ex.records_json, "Records as a JSON array");
  e->add_option("--dump-sizes", ex.dump_sizes, "Per-trial component size histogram CSV");
  e->add_option("--workers", ex.workers);
  e->add_flag("--timing", ex.timing, "Fill wall_time_ms");
  e->add_option("--vl-threshold", ex.vl_threshold);
  e->add_option("--vl-preset", ex.vl_preset, "7 or 14");
  e->add_option("--gap-lo", ex.gap_lo);
  e->add_option("--gap-hi", ex.gap_hi);
  e->add_option("--probes", ex.probes);
  e->add_option("--radius", ex.radius);

  FeasibilityArgs fe;
  auto* f = app.add_subcommand("feasibility", "Isolated-class construction arithmetic");
  f->add_option("--n", fe.n);
  f->add_option("--d", fe.d);
  f->add_option("--c1p", fe.c1p);
  f->add_option("--nc", fe.nc);
  f->add_option("--eps", fe.eps);
  f->add_option("--desired", fe.desired, "Desired expected number of isolated classes");
  f->add_option("--paper-c1", fe.paper_c1, "Also evaluate the original constants with this c1");

  MatchingArgs mt;
  auto* m = app.add_subcommand("matching", "Matching sizes in a percolated random edge set");
  m->add_option("--graph", mt.graph)->required();
  m->add_option("--f-size", mt.f_size);
  m->add_option("--delta", mt.delta);
  m->add_option("--trials", mt.trials);
  m->add_option("--seed", mt.seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return run_generate(gen);
    if (*c) return run_certify(cert);
    if (*b) return run_balls(balls);
    if (*w) return run_gw(gw);
    if (*p) return run_percolate(perc);
    if (*e) return run_experiment_cmd(ex);
    if (*f) return run_feasibility(fe);
    if (*m) return run_matching(mt);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
