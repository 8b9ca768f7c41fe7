#include "fmpl/graph_io.hpp"

#include <fstream>

#include "fmpl/errors.hpp"
#include "json.hpp"

namespace fmpl {

std::string graph_to_json(const UndirectedGraph& graph) {
  nlohmann::ordered_json j;
  j["p"] = graph.p();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : graph.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  return j.dump();
}

UndirectedGraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("invalid graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j.contains("edges") ||
      !j["p"].is_number_integer() || !j["edges"].is_array())
    throw InvalidInputError("graph JSON must be an object with integer \"p\" and array \"edges\"");
  UndirectedGraph graph(j["p"].get<int>());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InvalidInputError("graph JSON edge must be a pair of integers");
    graph.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return graph;
}

void write_graph_file(const std::string& path, const UndirectedGraph& graph) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << graph_to_json(graph) << '\n';
}

UndirectedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return graph_from_json(text);
}

}  // namespace fmpl
