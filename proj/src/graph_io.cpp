#include "ercp/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string_view>
#include <vector>

#include "ercp/error.hpp"

namespace ercp {

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ == text_.size(); }

  /// Parses "a b\n" starting at the cursor.
  std::pair<std::uint64_t, std::uint64_t> pair_line() {
    ++line_;
    const auto a = number();
    expect(' ');
    const auto b = number();
    expect('\n');
    return {a, b};
  }

  std::size_t line() const { return line_; }

 private:
  std::uint64_t number() {
    std::uint64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (first == last || *first < '0' || *first > '9') fail("expected a decimal number");
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) fail("number out of range");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(c == '\n' ? "expected end of line" : "expected a single space");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("graph file line " + std::to_string(line_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

}  // namespace

Graph read_graph(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  LineReader reader(text);
  const auto [n, m] = reader.pair_line();
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (reader.at_end())
      throw InvalidInput("graph file declares " + std::to_string(m) + " edges but has " + std::to_string(i));
    const auto [u, v] = reader.pair_line();
    if (u >= v) throw InvalidInput("graph file line " + std::to_string(reader.line()) + ": expected u < v");
    if (v >= n) throw InvalidInput("graph file line " + std::to_string(reader.line()) + ": vertex out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!reader.at_end()) throw InvalidInput("graph file has content after the declared edges");
  return Graph::from_edges(n, edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  g.for_each_edge([&](EdgeId, Vertex u, Vertex v) { out << u << ' ' << v << '\n'; });
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file " + path);
  write_graph(out, g);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace ercp
