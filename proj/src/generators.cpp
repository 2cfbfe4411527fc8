#include "ercp/generators.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "ercp/error.hpp"
#include "ercp/random.hpp"

namespace ercp {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilies{{
    {Family::complete, "complete"},
    {Family::hypercube, "hypercube"},
    {Family::random_regular, "random_regular"},
    {Family::disjoint_cliques, "disjoint_cliques"},
    {Family::linked_cliques, "linked_cliques"},
    {Family::anomaly, "anomaly"},
}};

struct KeyRule {
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
};

KeyRule rules_for(Family f) {
  switch (f) {
    case Family::complete: return {{"n"}, {}};
    case Family::hypercube: return {{"d"}, {}};
    case Family::random_regular: return {{"n", "d"}, {"seed"}};
    case Family::disjoint_cliques: return {{"d", "count"}, {}};
    case Family::linked_cliques: return {{"d", "count", "c"}, {"seed"}};
    case Family::anomaly: return {{"n", "d", "c1p", "nc"}, {"seed"}};
  }
  return {};
}

constexpr std::size_t kMaxPairingAttempts = 2000;
constexpr int kRandomPartnerTries = 48;

/// Flat n x capacity neighbor rows with fill counts, used while pairing stubs.
/// Adjacency queries scan the shorter row, or use a bit matrix when the
/// degree is high and n*n bits stays small.
class NeighborTable {
 public:
  NeighborTable(std::size_t n, std::size_t capacity)
      : n_(n), cap_(capacity), rows_(n * capacity), fill_(n, 0) {
    if (capacity > 48 && n * n <= (std::size_t{1} << 31)) dense_.assign((n * n + 63) / 64, 0);
  }

  bool contains(Vertex a, Vertex b) const {
    if (!dense_.empty()) {
      const std::size_t bit = std::size_t{a} * n_ + b;
      return (dense_[bit >> 6] >> (bit & 63)) & 1U;
    }
    if (fill_[a] > fill_[b]) std::swap(a, b);
    const Vertex* row = rows_.data() + std::size_t{a} * cap_;
    return std::find(row, row + fill_[a], b) != row + fill_[a];
  }

  void add(Vertex a, Vertex b) {
    rows_[std::size_t{a} * cap_ + fill_[a]++] = b;
    rows_[std::size_t{b} * cap_ + fill_[b]++] = a;
    flip(a, b);
  }

  /// Undoes the most recent add() touching both rows.
  void remove_last(Vertex a, Vertex b) {
    --fill_[a];
    --fill_[b];
    flip(a, b);
  }

  std::uint32_t fill(Vertex v) const { return fill_[v]; }
  std::span<const Vertex> row(Vertex v) const { return {rows_.data() + std::size_t{v} * cap_, fill_[v]}; }
  std::vector<Vertex> release() && { return std::move(rows_); }

 private:
  void flip(Vertex a, Vertex b) {
    if (dense_.empty()) return;
    for (std::size_t bit : {std::size_t{a} * n_ + b, std::size_t{b} * n_ + a})
      dense_[bit >> 6] ^= std::uint64_t{1} << (bit & 63);
  }

  std::size_t n_;
  std::size_t cap_;
  std::vector<Vertex> rows_;
  std::vector<std::uint32_t> fill_;
  std::vector<std::uint64_t> dense_;
};

/// Pairs stubs into edges of `table`, rejecting loops, repeated pairs and
/// pairs for which forbid(a, b) holds. Each stub in turn is matched with a
/// random remaining stub; if none is admissible the attempt is rolled back and
/// restarted with the stream derive_seed(seed, attempt).
template <class Forbid>
void pair_stubs(NeighborTable& table, std::vector<Vertex> stubs, std::uint64_t seed, Forbid forbid,
                std::string_view what) {
  if (stubs.size() % 2 != 0) throw InvalidInput(std::string(what) + ": odd number of stubs");
  std::vector<Edge> log;
  log.reserve(stubs.size() / 2);
  auto admissible = [&](Vertex a, Vertex b) { return a != b && !forbid(a, b) && !table.contains(a, b); };
  for (std::size_t attempt = 0; attempt < kMaxPairingAttempts; ++attempt) {
    Engine rng(derive_seed(seed, attempt));
    shuffle(std::span(stubs), rng);
    log.clear();
    bool stuck = false;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      const Vertex a = stubs[i];
      const std::size_t remaining = stubs.size() - i - 1;
      std::size_t partner = stubs.size();
      for (int t = 0; t < kRandomPartnerTries && partner == stubs.size(); ++t) {
        const std::size_t j = i + 1 + static_cast<std::size_t>(bounded(rng, remaining));
        if (admissible(a, stubs[j])) partner = j;
      }
      for (std::size_t j = i + 1; j < stubs.size() && partner == stubs.size(); ++j)
        if (admissible(a, stubs[j])) partner = j;
      if (partner == stubs.size()) {
        stuck = true;
        break;
      }
      std::swap(stubs[i + 1], stubs[partner]);
      table.add(a, stubs[i + 1]);
      log.push_back({a, stubs[i + 1]});
    }
    if (!stuck) return;
    for (auto it = log.rbegin(); it != log.rend(); ++it) table.remove_last(it->u, it->v);
  }
  throw BudgetExceeded(std::string(what) + ": stub pairing failed after " + std::to_string(kMaxPairingAttempts) +
                       " restarts");
}

std::size_t checked_count(std::uint64_t value, std::string_view name) {
  if (value > std::numeric_limits<Vertex>::max()) throw BudgetExceeded(std::string(name) + " exceeds 32-bit range");
  return static_cast<std::size_t>(value);
}

}  // namespace

std::string_view family_name(Family f) {
  for (auto [fam, name] : kFamilies)
    if (fam == f) return name;
  return "unknown";
}

bool GeneratorSpec::is_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return false;
  const auto head = text.substr(0, colon);
  return std::any_of(kFamilies.begin(), kFamilies.end(), [&](const auto& f) { return f.second == head; });
}

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("generator spec needs 'family:' prefix: " + std::string(text));
  const auto head = text.substr(0, colon);
  auto fam = std::find_if(kFamilies.begin(), kFamilies.end(), [&](const auto& f) { return f.second == head; });
  if (fam == kFamilies.end()) throw InvalidInput("unknown graph family '" + std::string(head) + "'");
  GeneratorSpec spec;
  spec.family_ = fam->first;
  const KeyRule rule = rules_for(spec.family_);

  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw InvalidInput("malformed parameter '" + std::string(item) + "' in generator spec");
    std::string key(item.substr(0, eq));
    std::string value(item.substr(eq + 1));
    const bool known = std::find(rule.required.begin(), rule.required.end(), key) != rule.required.end() ||
                       std::find(rule.optional.begin(), rule.optional.end(), key) != rule.optional.end();
    if (!known) throw InvalidInput("unknown parameter '" + key + "' for family " + std::string(head));
    if (spec.has(key)) throw InvalidInput("repeated parameter '" + key + "'");
    spec.params_.emplace_back(std::move(key), std::move(value));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw InvalidInput("trailing comma in generator spec");
  }
  for (auto key : rule.required)
    if (!spec.has(key)) throw InvalidInput("family " + std::string(head) + " requires parameter '" + std::string(key) + "'");
  // Validate value syntax eagerly.
  for (const auto& [key, value] : spec.params_) {
    if (key == "c")
      spec.number(key);
    else
      spec.integer(key);
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  std::string out(family_name(family_));
  out += ':';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i > 0) out += ',';
    out += params_[i].first;
    out += '=';
    out += params_[i].second;
  }
  return out;
}

bool GeneratorSpec::has(std::string_view key) const {
  return std::any_of(params_.begin(), params_.end(), [&](const auto& kv) { return kv.first == key; });
}

const std::string& GeneratorSpec::raw(std::string_view key) const {
  for (const auto& kv : params_)
    if (kv.first == key) return kv.second;
  throw InvalidInput("missing parameter '" + std::string(key) + "'");
}

std::uint64_t GeneratorSpec::integer(std::string_view key) const {
  const std::string& text = raw(key);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidInput("parameter '" + std::string(key) + "' must be a non-negative integer, got '" + text + "'");
  return value;
}

double GeneratorSpec::number(std::string_view key) const {
  const std::string& text = raw(key);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw InvalidInput("parameter '" + std::string(key) + "' must be a number, got '" + text + "'");
  return value;
}

std::uint64_t GeneratorSpec::seed() const { return has("seed") ? integer("seed") : 0; }

Graph complete_graph(std::size_t n) {
  if (n < 2) throw InvalidInput("complete graph needs n >= 2");
  if (n > 60000) throw BudgetExceeded("explicit complete graph limited to n <= 60000");
  std::vector<Vertex> table(n * (n - 1));
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t k = 0;
    for (std::size_t w = 0; w < n; ++w)
      if (w != v) table[v * (n - 1) + k++] = static_cast<Vertex>(w);
  }
  return Graph::from_regular_table(n, n - 1, std::move(table));
}

Graph hypercube(std::size_t d) {
  if (d < 1) throw InvalidInput("hypercube dimension must be at least 1");
  if (d > 30) throw BudgetExceeded("hypercube dimension limited to 30");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Vertex> table(n * d);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t b = 0; b < d; ++b) table[v * d + b] = static_cast<Vertex>(v ^ (std::size_t{1} << b));
  return Graph::from_regular_table(n, d, std::move(table));
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw InvalidInput("random regular graph needs n >= 1");
  if (d >= n) throw InvalidInput("random regular graph needs d < n");
  if ((n * d) % 2 != 0) throw InvalidInput("random regular graph needs n*d even");
  checked_count(n, "vertex count");
  std::vector<Vertex> stubs(n * d);
  for (std::size_t v = 0; v < n; ++v) std::fill_n(stubs.begin() + static_cast<std::ptrdiff_t>(v * d), d, static_cast<Vertex>(v));
  NeighborTable table(n, d);
  pair_stubs(table, std::move(stubs), seed, [](Vertex, Vertex) { return false; }, "random_regular");
  return Graph::from_regular_table(n, d, std::move(table).release());
}

Graph disjoint_cliques(std::size_t d, std::size_t count) {
  if (count < 1) throw InvalidInput("disjoint_cliques needs count >= 1");
  const std::size_t size = d + 1;
  const std::size_t n = size * count;
  checked_count(n, "vertex count");
  std::vector<Vertex> table(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t base = v / size * size;
    std::size_t k = 0;
    for (std::size_t w = base; w < base + size; ++w)
      if (w != v) table[v * d + k++] = static_cast<Vertex>(w);
  }
  return Graph::from_regular_table(n, d, std::move(table));
}

Graph linked_cliques(std::size_t d, std::size_t count, double c, std::uint64_t seed) {
  if (!(c > 0.0 && c <= 1.0)) throw InvalidInput("linked_cliques needs 0 < c <= 1");
  if (count < 2) throw InvalidInput("linked_cliques needs at least two cliques");
  const auto links = static_cast<std::size_t>(std::ceil(c * static_cast<double>(d) - 1e-9));
  if (links % 2 != 0)
    throw InvalidInput("linked_cliques needs ceil(c*d) even, got " + std::to_string(links));
  if (links > d + 1) throw InvalidInput("linked_cliques: ceil(c*d) exceeds clique order");
  const std::size_t size = d + 1;
  const std::size_t n = size * count;
  checked_count(n, "vertex count");

  NeighborTable table(n, d);
  std::vector<Vertex> stubs;
  stubs.reserve(links * count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t base = k * size;
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = a + 1; b < size; ++b) {
        const bool rewired = a % 2 == 0 && b == a + 1 && a < links;
        if (!rewired) table.add(static_cast<Vertex>(base + a), static_cast<Vertex>(base + b));
      }
    for (std::size_t a = 0; a < links; ++a) stubs.push_back(static_cast<Vertex>(base + a));
  }
  pair_stubs(table, std::move(stubs), seed, [size](Vertex a, Vertex b) { return a / size == b / size; },
             "linked_cliques");
  return Graph::from_regular_table(n, d, std::move(table).release());
}

std::vector<std::string> AnomalyParams::problems() const {
  std::vector<std::string> out;
  if (class_size == 0 || n % class_size != 0) {
    out.push_back("class_size must divide n");
    return out;
  }
  if (c1_prime == 0) out.push_back("c1_prime must be at least 1");
  if (d <= c1_prime) out.push_back("intra-class degree d - c1_prime must be at least 1");
  if (intra_degree() >= class_size) out.push_back("intra-class degree must be below class_size");
  if ((c1_prime * n) % 2 != 0) out.push_back("c1_prime * n must be even");
  if ((intra_degree() * class_size) % 2 != 0) out.push_back("intra-class degree * class_size must be even");
  if (classes() < 2) out.push_back("need at least two classes");
  if (c1_prime > n - class_size) out.push_back("c1_prime exceeds the number of vertices outside a class");
  if (n > std::numeric_limits<Vertex>::max()) out.push_back("n exceeds 32-bit vertex ids");
  return out;
}

Graph anomaly_construction(const AnomalyParams& params, std::uint64_t seed) {
  if (auto problems = params.problems(); !problems.empty()) {
    std::string msg = "infeasible anomaly parameters:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidInput(msg);
  }
  const std::size_t n = params.n;
  const std::size_t d = params.d;
  const std::size_t nc = params.class_size;
  const std::size_t dp = params.intra_degree();
  const std::size_t t = params.classes();

  NeighborTable table(n, d);
  // Intra-class graphs: independent streams keyed by class index.
  const std::uint64_t class_seed = derive_seed(seed, 1);
  std::vector<Vertex> local_stubs(nc * dp);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t v = 0; v < nc; ++v)
      std::fill_n(local_stubs.begin() + static_cast<std::ptrdiff_t>(v * dp), dp, static_cast<Vertex>(v));
    NeighborTable local(nc, dp);
    pair_stubs(local, local_stubs, derive_seed(class_seed, j), [](Vertex, Vertex) { return false; },
               "anomaly class graph");
    const auto base = static_cast<Vertex>(j * nc);
    for (std::size_t v = 0; v < nc; ++v)
      for (Vertex w : local.row(static_cast<Vertex>(v)))
        if (w > v) table.add(static_cast<Vertex>(base + v), base + w);
  }

  // Inter-class graph H on top of the class graphs.
  std::vector<Vertex> stubs(n * params.c1_prime);
  for (std::size_t v = 0; v < n; ++v)
    std::fill_n(stubs.begin() + static_cast<std::ptrdiff_t>(v * params.c1_prime), params.c1_prime,
                static_cast<Vertex>(v));
  pair_stubs(table, std::move(stubs), derive_seed(seed, 0), [nc](Vertex a, Vertex b) { return a / nc == b / nc; },
             "anomaly inter-class graph");
  return Graph::from_regular_table(n, d, std::move(table).release());
}

GeneratedGraph generate(const GeneratorSpec& spec) {
  auto count = [&](std::string_view key) { return checked_count(spec.integer(key), key); };
  switch (spec.family()) {
    case Family::complete: return {complete_graph(count("n")), std::nullopt};
    case Family::hypercube: return {hypercube(count("d")), std::nullopt};
    case Family::random_regular: return {random_regular(count("n"), count("d"), spec.seed()), std::nullopt};
    case Family::disjoint_cliques: return {disjoint_cliques(count("d"), count("count")), count("d") + 1};
    case Family::linked_cliques:
      return {linked_cliques(count("d"), count("count"), spec.number("c"), spec.seed()), count("d") + 1};
    case Family::anomaly: {
      const AnomalyParams params{count("n"), count("d"), count("c1p"), count("nc")};
      return {anomaly_construction(params, spec.seed()), params.class_size};
    }
  }
  throw InvalidInput("unhandled family");
}

FeasibilityReport construction_feasibility(const AnomalyParams& params, double eps, double desired_isolated) {
  FeasibilityReport r;
  r.params = params;
  r.eps = eps;
  r.desired_isolated = desired_isolated;
  r.p = params.d == 0 ? 0.0 : (1.0 + eps) / static_cast<double>(params.d);
  r.problems = params.problems();
  const char* all_checks[] = {"class_size divides n",
                              "1 <= d - c1_prime < class_size",
                              "c1_prime * n even",
                              "(d - c1_prime) * class_size even",
                              "at least two classes",
                              "c1_prime <= n - class_size"};
  if (r.problems.empty()) r.checks.assign(std::begin(all_checks), std::end(all_checks));
  const double boundary = static_cast<double>(params.c1_prime) * static_cast<double>(params.class_size);
  r.isolation_probability = std::exp(boundary * std::log1p(-std::min(r.p, 1.0 - 1e-300)));
  r.expected_isolated = static_cast<double>(params.classes()) * r.isolation_probability;
  r.intra_mean_offspring = r.p * static_cast<double>(params.intra_degree());
  r.class_exceeds_intra_degree = params.class_size > params.intra_degree();
  r.class_supercritical = r.intra_mean_offspring > 1.0;
  r.enough_isolated = r.expected_isolated >= desired_isolated;
  return r;
}

PaperConstantFeasibility paper_constant_feasibility(double n, double d, double c1) {
  PaperConstantFeasibility r;
  r.n = n;
  r.d = d;
  r.c1 = c1;
  r.c1_prime = 3.0 * c1;
  r.intra_degree = d - r.c1_prime;
  r.class_size = d * std::log(n / d) / (30.0 * c1);
  r.log_min_n_class_reaches_degree = std::log(d) + 30.0 * c1;
  r.log_min_n_class_exceeds_intra_degree = std::log(d) + 30.0 * c1 * std::max(r.intra_degree, 0.0) / d;
  if (r.intra_degree < 1) {
    r.reason = "d must exceed 3*c1 for a positive intra-class degree";
  } else if (r.class_size <= r.intra_degree) {
    r.reason = "class size d*ln(n/d)/(30*c1) = " + std::to_string(r.class_size) +
               " does not exceed the intra-class degree " + std::to_string(r.intra_degree) +
               "; needs ln(n) > " + std::to_string(r.log_min_n_class_exceeds_intra_degree);
  } else {
    r.feasible = true;
    r.reason = "class size exceeds intra-class degree";
  }
  return r;
}

}  // namespace ercp
