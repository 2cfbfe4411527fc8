#include "ercp/components.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "ercp/error.hpp"

namespace ercp {

ComponentSummary summarize(DisjointSets& sets) {
  const std::size_t n = sets.size();
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  ComponentSummary s;
  s.label.resize(n);
  std::vector<std::uint32_t> root_label(n, kUnset);
  for (std::size_t v = 0; v < n; ++v) {
    const Vertex root = sets.find(static_cast<Vertex>(v));
    if (root_label[root] == kUnset) {
      root_label[root] = static_cast<std::uint32_t>(s.label_size.size());
      s.label_size.push_back(0);
    }
    s.label[v] = root_label[root];
    ++s.label_size[root_label[root]];
  }
  s.sizes = s.label_size;
  std::sort(s.sizes.begin(), s.sizes.end(), std::greater<>());
  return s;
}

ComponentSummary components(const Graph& g, const Bitset* retained) {
  if (retained != nullptr && retained->size() != g.num_edges())
    throw InvalidInput("retention bitmap has length " + std::to_string(retained->size()) + " but graph has " +
                       std::to_string(g.num_edges()) + " edges");
  DisjointSets sets(g.num_vertices());
  if (retained == nullptr) {
    g.for_each_edge([&](EdgeId, Vertex u, Vertex v) { sets.unite(u, v); });
  } else {
    const auto words = retained->words();
    g.for_each_edge([&](EdgeId e, Vertex u, Vertex v) {
      if ((words[e >> 6] >> (e & 63)) & 1U) sets.unite(u, v);
    });
  }
  return summarize(sets);
}

ComponentSummary components_of_edges(std::size_t n, std::span<const Edge> edges) {
  DisjointSets sets(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw InvalidInput("edge endpoint outside vertex range");
    sets.unite(e.u, e.v);
  }
  return summarize(sets);
}

}  // namespace ercp
