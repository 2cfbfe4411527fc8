#pragma once

#include <iosfwd>
#include <string>

#include "ercp/graph.hpp"

namespace ercp {

// Text format: first line "n m", then m lines "u v" with u < v. ASCII
// decimal, single spaces, every line newline-terminated, nothing else.

Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

/// Writes edges in canonical id order.
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace ercp
