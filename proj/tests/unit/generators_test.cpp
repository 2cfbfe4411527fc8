#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <sstream>

#include "ercp/components.hpp"
#include "ercp/error.hpp"
#include "ercp/expansion.hpp"
#include "ercp/generators.hpp"
#include "ercp/graph_io.hpp"
#include "ercp/graph_ops.hpp"

using namespace ercp;

namespace {

std::string edge_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

std::uint64_t crossing_edges(const Graph& g, std::size_t class_size) {
  std::uint64_t c = 0;
  g.for_each_edge([&](EdgeId, Vertex u, Vertex v) { c += u / class_size != v / class_size ? 1 : 0; });
  return c;
}

}  // namespace

TEST(Spec, RoundTripKeepsText) {
  for (const char* text : {"hypercube:d=16", "random_regular:n=200000,d=100,seed=7",
                           "anomaly:n=4243200,d=64,c1p=3,nc=160,seed=1", "linked_cliques:d=4,count=10,c=0.5,seed=3",
                           "complete:n=100", "disjoint_cliques:count=2,d=3"})
    EXPECT_EQ(GeneratorSpec::parse(text).to_string(), text);
}

TEST(Spec, Rejections) {
  for (const char* bad : {"hypercube", "cube:d=3", "hypercube:d=", "hypercube:d=3,", "hypercube:x=3",
                          "hypercube:d=3,d=4", "random_regular:n=10", "random_regular:n=10,d=-3",
                          "linked_cliques:d=4,count=2,c=abc", "complete:n=1.5"})
    EXPECT_THROW(GeneratorSpec::parse(bad), InvalidInput) << bad;
}

TEST(Spec, SeedDefaultsToZero) {
  EXPECT_EQ(GeneratorSpec::parse("random_regular:n=10,d=3").seed(), 0U);
  EXPECT_TRUE(GeneratorSpec::is_spec("hypercube:d=3"));
  EXPECT_FALSE(GeneratorSpec::is_spec("/tmp/graph.txt"));
}

TEST(Complete, EdgeCounts) {
  EXPECT_EQ(complete_graph(4).num_edges(), 6U);
  EXPECT_EQ(complete_graph(2).num_edges(), 1U);
  const Graph k = complete_graph(100);
  EXPECT_EQ(k.num_edges(), 4950U);
  EXPECT_EQ(k.regular_degree().value_or(0), 99U);
  EXPECT_THROW(complete_graph(1), InvalidInput);
}

TEST(Hypercube, Sizes) {
  EXPECT_EQ(hypercube(3).num_vertices(), 8U);
  EXPECT_EQ(hypercube(3).num_edges(), 12U);
  EXPECT_EQ(hypercube(1).num_edges(), 1U);
  EXPECT_EQ(hypercube(10).num_edges(), 5120U);
  EXPECT_THROW(hypercube(31), BudgetExceeded);
  EXPECT_THROW(hypercube(0), InvalidInput);
  const Graph q = hypercube(4);
  q.for_each_edge([](EdgeId, Vertex u, Vertex v) { EXPECT_EQ(std::popcount(u ^ v), 1); });
}

TEST(RandomRegular, SmallCases) {
  EXPECT_EQ(random_regular(4, 3, 1).edges(), complete_graph(4).edges());
  const Graph m = random_regular(6, 1, 5);
  EXPECT_EQ(components(m).count(), 3U);
  EXPECT_THROW(random_regular(5, 5, 1), InvalidInput);
  EXPECT_THROW(random_regular(5, 3, 1), InvalidInput);
}

TEST(RandomRegular, ExactDegreesAndDeterminism) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const Graph g = random_regular(1000, 7 + (seed % 2), seed);
    EXPECT_EQ(g.regular_degree().value_or(0), 7 + (seed % 2));
    EXPECT_EQ(edge_text(g), edge_text(random_regular(1000, 7 + (seed % 2), seed)));
  }
  EXPECT_NE(edge_text(random_regular(1000, 8, 1)), edge_text(random_regular(1000, 8, 2)));
}

TEST(RandomRegular, DenseCaseUsesBitMatrix) {
  const Graph g = random_regular(300, 250, 4);
  EXPECT_EQ(g.regular_degree().value_or(0), 250U);
}

TEST(RandomRegular, SpectralSanity) {
  const Graph g = random_regular(10000, 20, 1);
  EXPECT_EQ(g.regular_degree().value_or(0), 20U);
  const SpectralEstimate est = spectral_gap_estimate(g, 1e-6, 3000, 1);
  EXPECT_LT(est.lambda2, 2 * std::sqrt(19.0) * 1.2);
}

TEST(DisjointCliques, Structure) {
  EXPECT_EQ(components(disjoint_cliques(3, 2)).sizes, (std::vector<std::uint64_t>{4, 4}));
  const Graph m = disjoint_cliques(1, 3);
  EXPECT_EQ(m.num_edges(), 3U);
  EXPECT_EQ(components(m).count(), 3U);
  EXPECT_EQ(disjoint_cliques(5, 4).regular_degree().value_or(0), 5U);
}

TEST(LinkedCliques, TwoCliques) {
  const Graph g = linked_cliques(4, 2, 0.5, 1);
  EXPECT_EQ(g.regular_degree().value_or(0), 4U);
  EXPECT_EQ(crossing_edges(g, 5), 2U);
  EXPECT_EQ(components(g).count(), 1U);
  EXPECT_EQ(edge_boundary(g, VertexSet::of(10, std::vector<Vertex>{0, 1, 2, 3, 4})), 2U);
}

TEST(LinkedCliques, SmallFractionStillConnected) {
  const Graph g = linked_cliques(10, 2, 0.2, 2);
  EXPECT_EQ(components(g).count(), 1U);
  EXPECT_EQ(g.regular_degree().value_or(0), 10U);
  EXPECT_EQ(edge_boundary(g, VertexSet::of(22, std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10})), 2U);
}

TEST(LinkedCliques, ManyCliques) {
  const Graph g = linked_cliques(4, 10, 0.5, 9);
  EXPECT_EQ(g.regular_degree().value_or(0), 4U);
  EXPECT_EQ(crossing_edges(g, 5), 10U);
}

TEST(LinkedCliques, Rejections) {
  EXPECT_THROW(linked_cliques(4, 2, 0.0, 1), InvalidInput);
  EXPECT_THROW(linked_cliques(4, 2, 0.75, 1), InvalidInput);  // ceil(3) odd
  EXPECT_THROW(linked_cliques(4, 1, 0.5, 1), InvalidInput);
}

TEST(Anomaly, StructuralExample) {
  const AnomalyParams params{1200, 16, 3, 48};
  const Graph g = anomaly_construction(params, 1);
  EXPECT_EQ(g.regular_degree().value_or(0), 16U);
  const std::size_t t = params.classes();
  EXPECT_EQ(t, 25U);
  std::vector<std::uint64_t> per_class(t, 0);
  std::vector<Edge> inside;
  g.for_each_edge([&](EdgeId, Vertex u, Vertex v) {
    if (u / 48 != v / 48) {
      ++per_class[u / 48];
      ++per_class[v / 48];
    } else {
      inside.push_back({u, v});
    }
  });
  for (auto c : per_class) EXPECT_EQ(c, 3U * 48U);
  // Each class induces a 13-regular graph; dropping crossing edges leaves t classes.
  const Graph intra = Graph::from_edges(1200, inside);
  EXPECT_EQ(intra.regular_degree().value_or(0), 13U);
  const auto comps = components(intra);
  for (Vertex v = 0; v < 1200; ++v) EXPECT_EQ(comps.label[v], comps.label[v / 48 * 48]);
  for (std::size_t j = 0; j < t; ++j) {
    VertexSet cls(1200);
    for (Vertex v = static_cast<Vertex>(j * 48); v < (j + 1) * 48; ++v) cls.insert(v);
    EXPECT_EQ(edge_boundary(g, cls), 144U);
  }
}

TEST(Anomaly, Deterministic) {
  const AnomalyParams params{960, 12, 2, 48};
  EXPECT_EQ(edge_text(anomaly_construction(params, 4)), edge_text(anomaly_construction(params, 4)));
  const auto gen = generate(GeneratorSpec::parse("anomaly:n=960,d=12,c1p=2,nc=48,seed=4"));
  EXPECT_EQ(gen.class_size.value_or(0), 48U);
  EXPECT_EQ(edge_text(gen.graph), edge_text(anomaly_construction(params, 4)));
}

TEST(Anomaly, RejectsBrokenParameters) {
  EXPECT_THROW(anomaly_construction({1000, 16, 3, 48}, 1), InvalidInput);  // 48 does not divide 1000
  EXPECT_THROW(anomaly_construction({1200, 16, 16, 48}, 1), InvalidInput);  // d' = 0
  EXPECT_THROW(anomaly_construction({1200, 60, 3, 48}, 1), InvalidInput);  // d' >= class size
  EXPECT_THROW(anomaly_construction({48, 16, 3, 48}, 1), InvalidInput);    // single class
  EXPECT_FALSE(AnomalyParams({1000, 16, 3, 48}).problems().empty());
}

TEST(Feasibility, DeskScaleInstance) {
  const FeasibilityReport r = construction_feasibility({4243200, 64, 3, 160}, 0.2);
  EXPECT_EQ(r.params.classes(), 26520U);
  const double p = 1.2 / 64;
  const double iso = std::pow(1 - p, 480);
  EXPECT_NEAR(r.isolation_probability, iso, 1e-15);
  EXPECT_NEAR(r.isolation_probability, 1.1e-4, 0.05e-4);
  EXPECT_NEAR(r.expected_isolated, 26520 * iso, 1e-9);
  EXPECT_NEAR(r.expected_isolated, 3.0, 0.05);
  EXPECT_NEAR(r.intra_mean_offspring, 1.14375, 1e-12);
  EXPECT_TRUE(r.feasible());
  EXPECT_FALSE(r.checks.empty());
}

TEST(Feasibility, SubcriticalClassesFlagged) {
  const FeasibilityReport r = construction_feasibility({4243200, 64, 3, 160}, 0.01);
  // p d' = 1.01 * 61 / 64 < 1
  EXPECT_FALSE(r.class_supercritical);
  EXPECT_FALSE(r.feasible());
}

TEST(Feasibility, OriginalConstantsOutOfReach) {
  const PaperConstantFeasibility r = paper_constant_feasibility(4e6, 64, 10);
  EXPECT_FALSE(r.feasible);
  EXPECT_LT(r.class_size, r.intra_degree);
  EXPECT_NEAR(r.class_size, 64 * std::log(4e6 / 64) / 300, 1e-9);
  // class_size >= d needs ln(n/d) >= 30 c1 = 300.
  EXPECT_NEAR(r.log_min_n_class_reaches_degree, std::log(64.0) + 300, 1e-9);
  const PaperConstantFeasibility huge = paper_constant_feasibility(std::exp(400.0), 64, 10);
  EXPECT_TRUE(huge.feasible);
}
