#pragma once

#include <vector>

#include "fmpl/graph.hpp"
#include "fmpl/scatter.hpp"

namespace fmpl {

// Sparsity prior settings. The prior on a node's blanket size arises from a
// Beta(a, b) mixing distribution over the edge-inclusion probability; the
// defaults a = b = 1/2 form the Jeffreys prior for the binomial parameter.
struct ScoreParams {
  bool use_prior = true;
  double prior_a = 0.5;
  double prior_b = 0.5;
};

// Per-node decomposition of the global log-score. total is the plain
// left-to-right sum over nodes of local score plus prior term.
struct ScoreCard {
  std::vector<double> local_log_scores;
  std::vector<double> local_log_priors;
  double total = 0.0;
};

// Local log marginal pseudo-likelihood of node j given candidate blanket mb.
//
// With q = |mb| and fa = mb + {j}:
//   -((n-1)/2) log pi + lgamma((n+q)/2) - lgamma((q+1)/2)
//   - ((2q+1)/2) log n - ((n-1)/2) (log|S_fa| - log|S_mb|)
//
// Everything is evaluated in log space; the gamma ratio uses log-gamma
// differences since Gamma(n/2) overflows doubles already near n = 340.
// Requires j not in mb and n >= |mb| + 2 (otherwise S_fa cannot be positive
// definite); throws NumericalError when the size bound or a factorization
// fails.
double local_fmpl_log_score(const ScatterMatrix& scatter, int j, const NodeSet& mb);

// The same formula evaluated from precomputed log-determinants; the single
// implementation behind both the blanket score and the DAG score.
double local_fmpl_log_score_from_logdets(int n, int blanket_size, double logdet_fa,
                                         double logdet_mb);

// Log prior score for a blanket of size q: with m = q(q+1)/2,
//   log Beta(a + q, b + m - q) - log Beta(a, b),
// and 0 when the prior is disabled. The p-dependent normalizing constant is
// dropped; it cancels in every comparison of blankets for a fixed node.
double log_prior_mb(int blanket_size, const ScoreParams& params);

// Global score of a graph: sum over nodes of the local score of the node's
// neighbor set plus its prior term. The per-node calls are exactly the ones
// single-node search would make, so the global score decomposes exactly.
ScoreCard global_fmpl_score(const ScatterMatrix& scatter, const UndirectedGraph& graph,
                            const ScoreParams& params);
ScoreCard global_fmpl_score(const ScatterMatrix& scatter, const MarkovBlanketFamily& family,
                            const ScoreParams& params);

// Log marginal likelihood of a Gaussian DAG given per-node parent sets; the
// same per-node formula with parents in place of blankets (no graph prior).
// Throws InvalidInputError when the parent sets contain a directed cycle.
double dag_log_marginal_likelihood(const ScatterMatrix& scatter,
                                   const std::vector<NodeSet>& parent_sets);

}  // namespace fmpl
