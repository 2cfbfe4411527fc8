#include "ercp/vertex_set.hpp"

#include <bit>
#include <string>

#include "ercp/error.hpp"

namespace ercp {

VertexSet VertexSet::of(std::size_t universe, std::span<const Vertex> members) {
  VertexSet s(universe);
  for (Vertex v : members) {
    if (v >= universe) throw InvalidInput("vertex " + std::to_string(v) + " outside universe");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t v = 0; v < universe; ++v) s.bits_.set(v);
  s.count_ = universe;
  return s;
}

bool VertexSet::insert(Vertex v) {
  if (bits_.test(v)) return false;
  bits_.set(v);
  ++count_;
  return true;
}

bool VertexSet::erase(Vertex v) {
  if (!bits_.test(v)) return false;
  bits_.reset(v);
  --count_;
  return true;
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  const auto words = bits_.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    while (word != 0) {
      out.push_back(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
      word &= word - 1;
    }
  }
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet c(universe());
  for (std::size_t v = 0; v < universe(); ++v)
    if (!bits_.test(v)) c.insert(static_cast<Vertex>(v));
  return c;
}

}  // namespace ercp
