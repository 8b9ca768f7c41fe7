#include "fmpl/graph.hpp"

#include <algorithm>
#include <string>

#include "fmpl/errors.hpp"

namespace fmpl {

UndirectedGraph::UndirectedGraph(int p) : p_(p), adjacency_(static_cast<std::size_t>(p)) {
  if (p < 1) throw InvalidInputError("graph needs at least one node");
}

void UndirectedGraph::check_pair(int i, int j) const {
  if (i < 0 || i >= p_ || j < 0 || j >= p_)
    throw InvalidInputError("edge endpoint out of range [0," + std::to_string(p_) + ")");
  if (i == j) throw InvalidInputError("self-loops are not allowed");
}

bool UndirectedGraph::has_edge(int i, int j) const {
  check_pair(i, j);
  if (i > j) std::swap(i, j);
  return edges_.count({i, j}) > 0;
}

void UndirectedGraph::add_edge(int i, int j) {
  check_pair(i, j);
  if (i > j) std::swap(i, j);
  if (!edges_.insert({i, j}).second) return;
  adjacency_[i].insert(std::upper_bound(adjacency_[i].begin(), adjacency_[i].end(), j), j);
  adjacency_[j].insert(std::upper_bound(adjacency_[j].begin(), adjacency_[j].end(), i), i);
}

void UndirectedGraph::remove_edge(int i, int j) {
  check_pair(i, j);
  if (i > j) std::swap(i, j);
  if (edges_.erase({i, j}) == 0) return;
  adjacency_[i].erase(std::find(adjacency_[i].begin(), adjacency_[i].end(), j));
  adjacency_[j].erase(std::find(adjacency_[j].begin(), adjacency_[j].end(), i));
}

const std::vector<int>& UndirectedGraph::markov_blanket(int j) const {
  if (j < 0 || j >= p_) throw InvalidInputError("node index out of range");
  return adjacency_[j];
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  return {edges_.begin(), edges_.end()};
}

bool UndirectedGraph::operator==(const UndirectedGraph& other) const {
  return p_ == other.p_ && edges_ == other.edges_;
}

MarkovBlanketFamily make_family(std::vector<std::vector<int>> blankets) {
  const int p = static_cast<int>(blankets.size());
  for (int j = 0; j < p; ++j) {
    std::sort(blankets[j].begin(), blankets[j].end());
    blankets[j].erase(std::unique(blankets[j].begin(), blankets[j].end()), blankets[j].end());
    for (int i : blankets[j]) {
      if (i == j) throw InvalidInputError("blanket of node " + std::to_string(j) + " contains itself");
      if (i < 0 || i >= p) throw InvalidInputError("blanket entry out of range");
    }
  }
  return MarkovBlanketFamily{std::move(blankets)};
}

UndirectedGraph graph_from_blankets(const MarkovBlanketFamily& family) {
  UndirectedGraph g(family.p());
  for (int j = 0; j < family.p(); ++j)
    for (int i : family.blankets[j]) g.add_edge(i, j);
  return g;
}

}  // namespace fmpl
