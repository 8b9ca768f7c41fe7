#include "fmpl/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <unordered_map>

#include "fmpl/errors.hpp"

namespace fmpl {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Memoizes subset -> log|S_subset| within one node's search; the same mb
// and fa subsets recur across iterations of the greedy loop.
class LogdetCache {
 public:
  explicit LogdetCache(const ScatterMatrix& scatter) : scatter_(scatter) {}

  // Returns -infinity for non-positive-definite subsets.
  double logdet(NodeSet subset) {
    std::sort(subset.begin(), subset.end());
    const std::string key(reinterpret_cast<const char*>(subset.data()),
                          subset.size() * sizeof(int));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    double value;
    try {
      value = scatter_.logdet_submatrix(subset);
    } catch (const NumericalError&) {
      value = kNegInf;
    }
    cache_.emplace(std::move(key), value);
    return value;
  }

 private:
  const ScatterMatrix& scatter_;
  std::unordered_map<std::string, double> cache_;
};

// Local objective for node j with blanket mb; -infinity when the score is
// not evaluable (treated as a rejected candidate).
double objective(const ScatterMatrix& scatter, LogdetCache& cache, int j, const NodeSet& mb,
                 const ScoreParams& params) {
  const int n = scatter.n();
  const int q = static_cast<int>(mb.size());
  if (n < q + 2) return kNegInf;
  NodeSet fa = mb;
  fa.push_back(j);
  const double logdet_fa = cache.logdet(fa);
  const double logdet_mb = cache.logdet(mb);
  if (!std::isfinite(logdet_fa) || !std::isfinite(logdet_mb)) return kNegInf;
  return local_fmpl_log_score_from_logdets(n, q, logdet_fa, logdet_mb) + log_prior_mb(q, params);
}

NodeSet without(const NodeSet& mb, int node) {
  NodeSet out;
  out.reserve(mb.size() - 1);
  for (int i : mb)
    if (i != node) out.push_back(i);
  return out;
}

NodeSet with(const NodeSet& mb, int node) {
  NodeSet out = mb;
  out.insert(std::upper_bound(out.begin(), out.end(), node), node);
  return out;
}

}  // namespace

int SearchConfig::resolved_max_mb_size(int p, int n) const {
  if (max_mb_size >= 0) return max_mb_size;
  return std::min(p - 1, n - 2);
}

NodeSet search_markov_blanket(const ScatterMatrix& scatter, int j, const SearchConfig& config) {
  const int p = scatter.p();
  const int n = scatter.n();
  if (j < 0 || j >= p) throw InvalidInputError("node index out of range");
  if (n < 3) throw InvalidInputError("blanket search needs n >= 3");
  const int cap = config.resolved_max_mb_size(p, n);

  LogdetCache cache(scatter);
  NodeSet mb;  // kept ascending
  double current = objective(scatter, cache, j, mb, config.score_params);

  for (;;) {
    double best = current;
    NodeSet best_mb;
    bool improved = false;
    // Deletions first, then additions, each in ascending node order; a
    // strictly-greater test makes the first candidate win ties.
    for (int i : mb) {
      NodeSet candidate = without(mb, i);
      const double value = objective(scatter, cache, j, candidate, config.score_params);
      if (value > best) {
        best = value;
        best_mb = std::move(candidate);
        improved = true;
      }
    }
    if (static_cast<int>(mb.size()) < cap) {
      for (int i = 0; i < p; ++i) {
        if (i == j || std::binary_search(mb.begin(), mb.end(), i)) continue;
        NodeSet candidate = with(mb, i);
        const double value = objective(scatter, cache, j, candidate, config.score_params);
        if (value > best) {
          best = value;
          best_mb = std::move(candidate);
          improved = true;
        }
      }
    }
    if (!improved) break;
    mb = std::move(best_mb);
    current = best;
  }
  return mb;
}

MarkovBlanketFamily search_all_blankets(const ScatterMatrix& scatter, const SearchConfig& config) {
  const int p = scatter.p();
  std::vector<std::vector<int>> blankets(p);
  std::vector<std::string> failures(p);

  const int workers = std::max(1, std::min(config.parallelism, p));
  if (workers == 1) {
    for (int j = 0; j < p; ++j) {
      try {
        blankets[j] = search_markov_blanket(scatter, j, config);
      } catch (const std::exception& e) {
        failures[j] = e.what();
      }
    }
  } else {
    std::atomic<int> next{0};
    auto work = [&]() {
      for (;;) {
        const int j = next.fetch_add(1);
        if (j >= p) return;
        try {
          blankets[j] = search_markov_blanket(scatter, j, config);
        } catch (const std::exception& e) {
          failures[j] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::string aggregated;
  for (int j = 0; j < p; ++j) {
    if (failures[j].empty()) continue;
    if (!aggregated.empty()) aggregated += "; ";
    aggregated += "node " + std::to_string(j) + ": " + failures[j];
  }
  if (!aggregated.empty()) throw NumericalError("blanket search failed: " + aggregated);
  return make_family(std::move(blankets));
}

UndirectedGraph assemble_or(const MarkovBlanketFamily& family) {
  UndirectedGraph g(family.p());
  for (int j = 0; j < family.p(); ++j)
    for (int i : family.blankets[j]) g.add_edge(i, j);
  return g;
}

UndirectedGraph assemble_and(const MarkovBlanketFamily& family) {
  UndirectedGraph g(family.p());
  for (int j = 0; j < family.p(); ++j) {
    for (int i : family.blankets[j]) {
      if (i > j) continue;  // visit each unordered pair once, from the higher node
      if (std::binary_search(family.blankets[i].begin(), family.blankets[i].end(), j))
        g.add_edge(i, j);
    }
  }
  return g;
}

UndirectedGraph refine_hc(const ScatterMatrix& scatter, const MarkovBlanketFamily& family,
                          const SearchConfig& config) {
  UndirectedGraph graph = assemble_or(family);
  const auto candidate_edges = graph.edges();  // E_OR, lexicographic
  const int p = graph.p();

  LogdetCache cache(scatter);
  std::vector<double> local(p);
  for (int j = 0; j < p; ++j)
    local[j] = objective(scatter, cache, j, graph.markov_blanket(j), config.score_params);

  for (;;) {
    double best_gain = 0.0;
    int best_edge = -1;
    bool best_is_removal = false;
    double best_local_i = 0.0, best_local_j = 0.0;

    for (std::size_t e = 0; e < candidate_edges.size(); ++e) {
      const auto [i, j] = candidate_edges[e];
      const bool removal = graph.has_edge(i, j);
      const NodeSet mb_i = removal ? without(graph.markov_blanket(i), j)
                                   : with(graph.markov_blanket(i), j);
      const NodeSet mb_j = removal ? without(graph.markov_blanket(j), i)
                                   : with(graph.markov_blanket(j), i);
      const double new_i = objective(scatter, cache, i, mb_i, config.score_params);
      const double new_j = objective(scatter, cache, j, mb_j, config.score_params);
      if (!std::isfinite(new_i) || !std::isfinite(new_j)) continue;
      const double gain = (new_i - local[i]) + (new_j - local[j]);
      if (!(gain > 0.0)) continue;
      bool take;
      if (best_edge < 0)
        take = true;
      else if (gain != best_gain)
        take = gain > best_gain;
      else
        take = removal && !best_is_removal;  // lex order already won within a kind
      if (take) {
        best_gain = gain;
        best_edge = static_cast<int>(e);
        best_is_removal = removal;
        best_local_i = new_i;
        best_local_j = new_j;
      }
    }

    if (best_edge < 0) break;
    const auto [i, j] = candidate_edges[best_edge];
    if (best_is_removal)
      graph.remove_edge(i, j);
    else
      graph.add_edge(i, j);
    local[i] = best_local_i;
    local[j] = best_local_j;
  }
  return graph;
}

UndirectedGraph learn_structure(const ScatterMatrix& scatter, const SearchConfig& config) {
  const MarkovBlanketFamily family = search_all_blankets(scatter, config);
  switch (config.method) {
    case AssemblyMethod::kOr:
      return assemble_or(family);
    case AssemblyMethod::kAnd:
      return assemble_and(family);
    case AssemblyMethod::kHillClimb:
      return refine_hc(scatter, family, config);
  }
  throw InvalidInputError("unknown assembly method");
}

}  // namespace fmpl
