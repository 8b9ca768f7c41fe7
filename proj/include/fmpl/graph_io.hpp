#pragma once

#include <string>

#include "fmpl/graph.hpp"

namespace fmpl {

// Graph wire format: {"p": int, "edges": [[i,j], ...]} with i < j and the
// edge list sorted lexicographically.
std::string graph_to_json(const UndirectedGraph& graph);
UndirectedGraph graph_from_json(const std::string& text);

void write_graph_file(const std::string& path, const UndirectedGraph& graph);
UndirectedGraph read_graph_file(const std::string& path);

}  // namespace fmpl
