#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ercp/graph.hpp"

namespace ercp {

enum class Family { complete, hypercube, random_regular, disjoint_cliques, linked_cliques, anomaly };

std::string_view family_name(Family f);

/// Parsed generator string `family:key=value,key=value,...`.
/// Values keep their source text, so to_string() reproduces the input exactly.
class GeneratorSpec {
 public:
  static GeneratorSpec parse(std::string_view text);
  /// True if `text` starts with a known family name followed by ':'.
  static bool is_spec(std::string_view text);

  Family family() const { return family_; }
  std::string to_string() const;

  bool has(std::string_view key) const;
  std::uint64_t integer(std::string_view key) const;
  double number(std::string_view key) const;
  /// The `seed` parameter, 0 when absent.
  std::uint64_t seed() const;

 private:
  const std::string& raw(std::string_view key) const;

  Family family_ = Family::complete;
  std::vector<std::pair<std::string, std::string>> params_;
};

/// Parameters of the isolated-class construction. Classes are the contiguous
/// vertex blocks [j * class_size, (j + 1) * class_size).
struct AnomalyParams {
  std::size_t n = 0;
  std::size_t d = 0;
  /// Degree of the sparse inter-class graph.
  std::size_t c1_prime = 0;
  std::size_t class_size = 0;

  std::size_t classes() const { return class_size == 0 ? 0 : n / class_size; }
  /// d' = d - c1_prime, the degree inside each class.
  std::size_t intra_degree() const { return d >= c1_prime ? d - c1_prime : 0; }

  /// Structural problems (divisibility, parity, degree ranges); empty when buildable.
  std::vector<std::string> problems() const;
};

/// A generated host plus its class partition when the family has one.
struct GeneratedGraph {
  Graph graph;
  std::optional<std::size_t> class_size;
};

Graph complete_graph(std::size_t n);
Graph hypercube(std::size_t d);
/// Simple d-regular graph by stub pairing with rejection of loops and repeated
/// pairs; a dead end restarts from scratch with the stream derive_seed(seed, attempt).
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);
Graph disjoint_cliques(std::size_t d, std::size_t count);
/// Cliques K_{d+1}, each with ceil(c*d)/2 internal matching edges rewired to
/// a random pairing across cliques. The result stays d-regular.
Graph linked_cliques(std::size_t d, std::size_t count, double c, std::uint64_t seed);
/// Each class carries an independent random d'-regular graph (stream keyed by
/// class index) and the classes are joined by a random c1'-regular graph with
/// no edge inside a class.
Graph anomaly_construction(const AnomalyParams& params, std::uint64_t seed);

GeneratedGraph generate(const GeneratorSpec& spec);

struct FeasibilityReport {
  AnomalyParams params;
  double eps = 0;
  double p = 0;
  double isolation_probability = 0;  // (1-p)^(c1' * class_size)
  double expected_isolated = 0;      // mu = t * isolation_probability
  double intra_mean_offspring = 0;   // p * d'
  double desired_isolated = 1;
  bool class_exceeds_intra_degree = false;
  bool class_supercritical = false;
  bool enough_isolated = false;
  std::vector<std::string> checks;    // structural conditions that were verified
  std::vector<std::string> problems;  // structural conditions that failed

  bool feasible() const {
    return problems.empty() && class_exceeds_intra_degree && class_supercritical && enough_isolated;
  }
};

FeasibilityReport construction_feasibility(const AnomalyParams& params, double eps, double desired_isolated = 1.0);

/// The construction with its original constants: c1' = 3 c1 and
/// class size d ln(n/d) / (30 c1).
struct PaperConstantFeasibility {
  double n = 0;
  double d = 0;
  double c1 = 0;
  double class_size = 0;
  double c1_prime = 0;
  double intra_degree = 0;
  /// Smallest n with class_size >= d, i.e. d * e^(30 c1), as a natural log.
  double log_min_n_class_reaches_degree = 0;
  /// Smallest n with class_size > d', as a natural log.
  double log_min_n_class_exceeds_intra_degree = 0;
  bool feasible = false;
  std::string reason;
};

PaperConstantFeasibility paper_constant_feasibility(double n, double d, double c1);

}  // namespace ercp
