#include "fmpl/scoring.hpp"

#include <cmath>
#include <string>

#include "fmpl/errors.hpp"

namespace fmpl {

namespace {

constexpr double kLogPi = 1.1447298858494001741;  // log(pi)

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

}  // namespace

double local_fmpl_log_score_from_logdets(int n, int blanket_size, double logdet_fa,
                                         double logdet_mb) {
  const int q = blanket_size;
  const double half_nm1 = 0.5 * (n - 1);
  return -half_nm1 * kLogPi + std::lgamma(0.5 * (n + q)) - std::lgamma(0.5 * (q + 1)) -
         0.5 * (2 * q + 1) * std::log(static_cast<double>(n)) -
         half_nm1 * (logdet_fa - logdet_mb);
}

double local_fmpl_log_score(const ScatterMatrix& scatter, int j, const NodeSet& mb) {
  const int n = scatter.n();
  const int q = static_cast<int>(mb.size());
  for (int i : mb)
    if (i == j) throw InvalidInputError("blanket of node " + std::to_string(j) + " contains itself");
  if (n < q + 2)
    throw NumericalError("blanket of size " + std::to_string(q) + " too large for n = " +
                         std::to_string(n) + " at node " + std::to_string(j));

  NodeSet fa = mb;
  fa.push_back(j);
  const double logdet_fa = scatter.logdet_submatrix(fa);
  const double logdet_mb = scatter.logdet_submatrix(mb);
  return local_fmpl_log_score_from_logdets(n, q, logdet_fa, logdet_mb);
}

double log_prior_mb(int blanket_size, const ScoreParams& params) {
  if (!params.use_prior) return 0.0;
  if (blanket_size < 0) throw InvalidInputError("blanket size must be non-negative");
  const double a = params.prior_a;
  const double b = params.prior_b;
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInputError("prior parameters must be positive");
  const double q = blanket_size;
  const double m = q * (q + 1) / 2;
  return log_beta(a + q, b + m - q) - log_beta(a, b);
}

namespace {

ScoreCard score_blankets(const ScatterMatrix& scatter,
                         const std::vector<std::vector<int>>& blankets,
                         const ScoreParams& params) {
  ScoreCard card;
  const int p = static_cast<int>(blankets.size());
  card.local_log_scores.resize(p);
  card.local_log_priors.resize(p);
  for (int j = 0; j < p; ++j) {
    card.local_log_scores[j] = local_fmpl_log_score(scatter, j, blankets[j]);
    card.local_log_priors[j] = log_prior_mb(static_cast<int>(blankets[j].size()), params);
    card.total += card.local_log_scores[j] + card.local_log_priors[j];
  }
  return card;
}

}  // namespace

ScoreCard global_fmpl_score(const ScatterMatrix& scatter, const UndirectedGraph& graph,
                            const ScoreParams& params) {
  std::vector<std::vector<int>> blankets(graph.p());
  for (int j = 0; j < graph.p(); ++j) blankets[j] = graph.markov_blanket(j);
  return score_blankets(scatter, blankets, params);
}

ScoreCard global_fmpl_score(const ScatterMatrix& scatter, const MarkovBlanketFamily& family,
                            const ScoreParams& params) {
  return score_blankets(scatter, family.blankets, params);
}

double dag_log_marginal_likelihood(const ScatterMatrix& scatter,
                                   const std::vector<NodeSet>& parent_sets) {
  const int p = static_cast<int>(parent_sets.size());
  // Kahn's algorithm over edges parent -> child.
  std::vector<int> indegree(p, 0);
  std::vector<std::vector<int>> children(p);
  for (int j = 0; j < p; ++j) {
    for (int i : parent_sets[j]) {
      if (i < 0 || i >= p || i == j) throw InvalidInputError("invalid parent set");
      children[i].push_back(j);
      ++indegree[j];
    }
  }
  std::vector<int> frontier;
  for (int j = 0; j < p; ++j)
    if (indegree[j] == 0) frontier.push_back(j);
  int visited = 0;
  while (!frontier.empty()) {
    const int v = frontier.back();
    frontier.pop_back();
    ++visited;
    for (int c : children[v])
      if (--indegree[c] == 0) frontier.push_back(c);
  }
  if (visited != p) throw InvalidInputError("parent sets contain a directed cycle");

  double total = 0.0;
  for (int j = 0; j < p; ++j) total += local_fmpl_log_score(scatter, j, parent_sets[j]);
  return total;
}

}  // namespace fmpl
