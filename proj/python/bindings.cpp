#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ercp/branching.hpp"
#include "ercp/error.hpp"
#include "ercp/expansion.hpp"
#include "ercp/experiments.hpp"
#include "ercp/generators.hpp"
#include "ercp/graph_io.hpp"
#include "ercp/percolation.hpp"
#include "ercp/records_io.hpp"
#include "ercp/report_json.hpp"

namespace py = pybind11;
using namespace ercp;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

std::shared_ptr<Graph> load(const std::string& text) {
  if (GeneratorSpec::is_spec(text)) return std::make_shared<Graph>(generate(GeneratorSpec::parse(text)).graph);
  return std::make_shared<Graph>(read_graph_file(text));
}

std::string certify(const Graph& g, const std::string& property, const std::string& options) {
  const Json o = options.empty() ? Json::object() : Json::parse(options);
  auto get = [&](const char* key, auto fallback) { return o.contains(key) ? o[key].get<decltype(fallback)>() : fallback; };
  py::gil_scoped_release release;
  if (property == "p1") {
    P1Options p;
    const std::string method = get("method", std::string("exact"));
    p.method = method == "spectral" ? P1Method::spectral : method == "search" ? P1Method::search : P1Method::exact;
    if (method != "exact" && method != "spectral" && method != "search") throw InvalidInput("unknown P1 method");
    p.target = get("target", p.target);
    p.budget = get("budget", p.budget);
    p.seed = get("seed", p.seed);
    return dump(to_json(certify_global_expansion(g, p)));
  }
  if (property == "p2") {
    P2Options p;
    p.k_max = get("k_max", p.k_max);
    p.c3_target = get("target", p.c3_target);
    p.budget = get("budget", p.budget);
    return dump(to_json(certify_vertex_expansion(g, p)));
  }
  if (property == "p3") {
    P3Options p;
    p.k_max_exact = get("k_max", p.k_max_exact);
    p.k_max_search = get("k_max_search", p.k_max_search);
    p.slack = get("slack", p.slack);
    p.budget = get("budget", p.budget);
    p.search_budget = get("search_budget", p.search_budget);
    p.restarts = get("restarts", p.restarts);
    p.seed = get("seed", p.seed);
    return dump(to_json(certify_small_set_expansion(g, p)));
  }
  throw InvalidInput("property must be p1, p2 or p3");
}

std::string experiment(const std::string& config_json, const std::string& csv_path, const std::string& summary_path,
                       const std::string& sizes_path) {
  ExperimentConfig cfg = config_from_json(Json::parse(config_json));
  cfg.keep_sizes = !sizes_path.empty();
  ExperimentResult r;
  {
    py::gil_scoped_release release;
    r = run_experiment(cfg);
  }
  if (!csv_path.empty()) write_records_csv_file(csv_path, r.records);
  if (!sizes_path.empty()) write_size_dump_file(sizes_path, r.records);
  Json out = experiment_summary_json(r);
  if (!summary_path.empty()) {
    std::ofstream file(summary_path);
    if (!file) throw std::runtime_error("cannot open " + summary_path + " for writing");
    file << out.dump(2) << '\n';
  }
  out["records"] = records_json(r.records);
  return dump(out);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bond percolation on expander hosts";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Graph, std::shared_ptr<Graph>>(m, "Graph")
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("regular_degree", &Graph::regular_degree)
      .def("degree", &Graph::degree)
      .def("neighbors", [](const Graph& g, Vertex v) {
        if (v >= g.num_vertices()) throw py::index_error("vertex out of range");
        const auto s = g.neighbors(v);
        return std::vector<Vertex>(s.begin(), s.end());
      })
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(g.num_edges());
        g.for_each_edge([&](EdgeId, Vertex u, Vertex v) { out.emplace_back(u, v); });
        return out;
      })
      .def("write", [](const Graph& g, const std::string& path) { write_graph_file(path, g); });

  m.def("load_graph", &load, py::arg("spec_or_path"), "Generator spec or graph file");
  m.def("from_edges", [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<Edge> e;
    e.reserve(edges.size());
    for (auto [u, v] : edges) e.push_back({u, v});
    return std::make_shared<Graph>(Graph::from_edges(n, e));
  }, py::arg("n"), py::arg("edges"));

  m.def("survival_probability", [](double eps) { return survival_probability(eps).y; }, py::arg("eps"));
  m.def("regular_tree_survival", [](std::size_t d, double p) { return regular_tree_survival(d, p); }, py::arg("d"),
        py::arg("p"));
  m.def("gw_monte_carlo_json", [](std::size_t d, double p, std::size_t depth, std::uint64_t trials, std::uint64_t seed) {
    py::gil_scoped_release release;
    return dump(to_json(gw_survival_monte_carlo(d, p, depth, trials, seed)));
  });
  m.def("percolate_json", [](const Graph& g, double p, std::uint64_t seed, std::size_t top) {
    py::gil_scoped_release release;
    const PercolationSample s = percolate(g, p, seed);
    Json j = component_stats_json(components(s), top);
    j["retained_edges"] = s.retained_count();
    return dump(j);
  });
  m.def("certify_json", &certify);
  m.def("experiment_json", &experiment);
  m.def("feasibility_json", [](std::size_t n, std::size_t d, std::size_t c1p, std::size_t nc, double eps) {
    return dump(to_json(construction_feasibility({n, d, c1p, nc}, eps)));
  });
  m.def("paper_constant_feasibility_json",
        [](double n, double d, double c1) { return dump(to_json(paper_constant_feasibility(n, d, c1))); });
  m.attr("CSV_HEADER") = std::string(kRecordCsvHeader);
}
