#pragma once

#include <set>
#include <utility>
#include <vector>

namespace fmpl {

// Undirected graph on p nodes. Edges are unordered pairs stored once in
// canonical (i < j) order; no self-loops. Markov blankets are the neighbor
// sets and are derived from the edge set.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int p);

  int p() const { return p_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);

  // Neighbors of j, ascending.
  const std::vector<int>& markov_blanket(int j) const;

  // All edges, sorted lexicographically with i < j.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const UndirectedGraph& other) const;

 private:
  void check_pair(int i, int j) const;

  int p_;
  std::set<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Per-node blanket claims as produced by independent searches. Unlike a
// graph's blankets these need not be symmetric; OR/AND assembly restores
// symmetry. blankets[j] never contains j.
struct MarkovBlanketFamily {
  std::vector<std::vector<int>> blankets;  // each ascending

  int p() const { return static_cast<int>(blankets.size()); }
};

MarkovBlanketFamily make_family(std::vector<std::vector<int>> blankets);

// Graph whose blanket family equals the given symmetric-by-construction
// family (used to view a graph as blankets and back in tests).
UndirectedGraph graph_from_blankets(const MarkovBlanketFamily& family);

}  // namespace fmpl
