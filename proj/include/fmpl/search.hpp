#pragma once

#include "fmpl/graph.hpp"
#include "fmpl/scatter.hpp"
#include "fmpl/scoring.hpp"

namespace fmpl {

enum class AssemblyMethod { kOr, kAnd, kHillClimb };

struct SearchConfig {
  // Largest blanket the search may build. Negative means the default
  // min(p - 1, n - 2); n - 2 keeps every scored family submatrix inside the
  // positive-definiteness bound with one unit of slack.
  int max_mb_size = -1;
  AssemblyMethod method = AssemblyMethod::kAnd;
  ScoreParams score_params;
  int parallelism = 1;

  int resolved_max_mb_size(int p, int n) const;
};

// Greedy local maximization of local_fmpl_log_score(j, .) + log_prior_mb
// over single-node additions and deletions, starting from the empty set.
// Every iteration scores all legal moves and applies the best strictly
// improving one; ties prefer deletions, then the lowest node index.
// Candidates whose score evaluation fails numerically are treated as
// -infinity rather than aborting the search. Deterministic.
NodeSet search_markov_blanket(const ScatterMatrix& scatter, int j, const SearchConfig& config);

// search_markov_blanket for every node, optionally across worker threads.
// Results are slotted by node index, so the outcome is identical for any
// worker count. Per-node failures are aggregated into one error naming the
// nodes that failed.
MarkovBlanketFamily search_all_blankets(const ScatterMatrix& scatter, const SearchConfig& config);

// Symmetrization rules for the (possibly asymmetric) blanket claims:
// OR keeps an edge if either endpoint claims it, AND only if both do.
UndirectedGraph assemble_or(const MarkovBlanketFamily& family);
UndirectedGraph assemble_and(const MarkovBlanketFamily& family);

// Greedy global refinement within the OR edge set: starting from the OR
// graph, repeatedly toggles the single edge of E_OR whose flip most
// increases the global score (only the two incident local scores change),
// until no toggle improves. Tie-break is lexicographic over E_OR with
// removal preferred over addition on exact ties. The result's edges are a
// subset of E_OR. Strictly sequential.
UndirectedGraph refine_hc(const ScatterMatrix& scatter, const MarkovBlanketFamily& family,
                          const SearchConfig& config);

// Runs the full pipeline for the configured method: blanket searches, then
// OR/AND assembly or HC refinement.
UndirectedGraph learn_structure(const ScatterMatrix& scatter, const SearchConfig& config);

}  // namespace fmpl
