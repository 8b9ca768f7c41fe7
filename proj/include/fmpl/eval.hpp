#pragma once

#include "fmpl/dataset.hpp"
#include "fmpl/graph.hpp"
#include "fmpl/scatter.hpp"
#include "fmpl/synthgen.hpp"

namespace fmpl {

// Structure-recovery metrics against a known truth. tp_rate is the fraction
// of true edges recovered (1 when there are no true edges to recover);
// fp_rate is the number of false edges over the number of true non-edges
// (0 when the true graph is complete).
struct RecoveryReport {
  int hamming = 0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  int edges_true = 0;
  int edges_learned = 0;
};

RecoveryReport recovery_report(const UndirectedGraph& true_graph,
                               const UndirectedGraph& learned);

// Maximum likelihood precision matrix under the zero pattern of the graph:
// Omega_ij = 0 exactly for non-edges, and inv(Omega) matches the sample
// covariance C = S/n on all edges and the diagonal to within tol. Fitted by
// cyclic nodewise regression on a working covariance (regress each node on
// its neighbors, update the row/column, repeat until the fixed point holds).
// Throws ConvergenceError when max_iter full sweeps do not reach tol and
// NumericalError when a required submatrix of C is not positive definite.
PrecisionModel mle_precision_given_graph(const Dataset& dataset,
                                         const UndirectedGraph& graph,
                                         double tol = 1e-8,
                                         int max_iter = 500);

// Mean squared error of predicting every component of every test row from
// the remaining components: Xhat_i = -sum_{j != i} (omega_ij / omega_ii) X_j.
// The mean pools all (row, component) pairs. Throws on a zero diagonal entry.
double predict_components(const PrecisionModel& model, const Dataset& test);

// Deviance statistic for testing x_B independent of x_C given x_A:
//   -n (log|S_{A u B u C}| + log|S_A| - log|S_{A u B}| - log|S_{A u C}|),
// asymptotically chi-squared with |B||C| degrees of freedom under the null.
// A may be empty (log|S_empty| = 0). A, B, C must be disjoint.
double deviance_statistic(const ScatterMatrix& scatter, const NodeSet& a,
                          const NodeSet& b, const NodeSet& c);

// Extended BIC of a precision estimate against the sample covariance
// C = S/n:
//   n tr(Omega C) - n log|Omega| + K log n + 4 K gamma log p,
// where K counts the strictly-upper-triangle nonzeros of Omega. Requires
// 0 <= gamma <= 1 and Omega positive definite.
double ebic(const PrecisionModel& model, const ScatterMatrix& scatter,
            double gamma = 0.5);

}  // namespace fmpl
