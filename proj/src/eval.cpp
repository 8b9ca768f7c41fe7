#include "fmpl/eval.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fmpl/errors.hpp"

namespace fmpl {

RecoveryReport recovery_report(const UndirectedGraph& true_graph,
                               const UndirectedGraph& learned) {
  if (true_graph.p() != learned.p()) {
    throw InvalidInputError("recovery_report: graphs have different p (" +
                            std::to_string(true_graph.p()) + " vs " +
                            std::to_string(learned.p()) + ")");
  }
  const auto true_edges = true_graph.edges();
  const auto learned_edges = learned.edges();
  std::vector<std::pair<int, int>> common;
  std::set_intersection(true_edges.begin(), true_edges.end(),
                        learned_edges.begin(), learned_edges.end(),
                        std::back_inserter(common));

  RecoveryReport report;
  report.edges_true = static_cast<int>(true_edges.size());
  report.edges_learned = static_cast<int>(learned_edges.size());
  const int hits = static_cast<int>(common.size());
  report.hamming = report.edges_true + report.edges_learned - 2 * hits;
  report.tp_rate = report.edges_true == 0
                       ? 1.0
                       : static_cast<double>(hits) / report.edges_true;
  const int p = true_graph.p();
  const int non_edges = p * (p - 1) / 2 - report.edges_true;
  report.fp_rate = non_edges == 0 ? 0.0
                                  : static_cast<double>(report.edges_learned -
                                                        hits) /
                                        non_edges;
  return report;
}

namespace {

// Gather c(rows, cols) into a dense block.
Eigen::MatrixXd gather(const Eigen::MatrixXd& c, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd block(rows.size(), cols.size());
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
      block(i, j) = c(rows[i], cols[j]);
  return block;
}

// Regression coefficients of node j on its neighbors against the working
// covariance w, with the targets taken from c. Throws when w restricted to
// the neighbors is not positive definite.
Eigen::VectorXd neighbor_coefficients(const Eigen::MatrixXd& w,
                                      const Eigen::MatrixXd& c, int j,
                                      const std::vector<int>& nb) {
  Eigen::MatrixXd w11 = gather(w, nb, nb);
  Eigen::VectorXd rhs(nb.size());
  for (int k = 0; k < static_cast<int>(nb.size()); ++k) rhs(k) = c(nb[k], j);
  Eigen::LLT<Eigen::MatrixXd> llt(w11);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(
        "mle_precision_given_graph: neighbor submatrix for node " +
        std::to_string(j) + " is not positive definite");
  }
  return llt.solve(rhs);
}

}  // namespace

PrecisionModel mle_precision_given_graph(const Dataset& dataset,
                                         const UndirectedGraph& graph,
                                         double tol, int max_iter) {
  const int p = graph.p();
  if (dataset.p() != p) {
    throw InvalidInputError(
        "mle_precision_given_graph: dataset has p = " +
        std::to_string(dataset.p()) + " but graph has p = " +
        std::to_string(p));
  }
  if (tol <= 0.0) {
    throw InvalidInputError("mle_precision_given_graph: tol must be positive");
  }
  const int n = dataset.n();
  Eigen::MatrixXd c = dataset.values.transpose() * dataset.values / n;
  c = ((c + c.transpose()) / 2.0).eval();

  Eigen::MatrixXd w = c;  // working covariance, diagonal pinned to C
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(p, p);

  for (int sweep = 0; sweep < max_iter; ++sweep) {
    for (int j = 0; j < p; ++j) {
      const std::vector<int>& nb = graph.markov_blanket(j);
      if (nb.empty()) {
        for (int i = 0; i < p; ++i) {
          if (i == j) continue;
          w(i, j) = 0.0;
          w(j, i) = 0.0;
        }
        continue;
      }
      Eigen::VectorXd beta = neighbor_coefficients(w, c, j, nb);
      // New column j of w: w(i, j) = sum_k w(i, nb[k]) beta_k for i != j.
      for (int i = 0; i < p; ++i) {
        if (i == j) continue;
        double value = 0.0;
        for (int k = 0; k < static_cast<int>(nb.size()); ++k)
          value += w(i, nb[k]) * beta(k);
        w(i, j) = value;
        w(j, i) = value;
      }
    }

    // Recover the precision matrix from the (frozen) working covariance:
    // column j is determined by the regression coefficients and the
    // conditional variance c_jj - rhs' beta.
    for (int j = 0; j < p; ++j) {
      const std::vector<int>& nb = graph.markov_blanket(j);
      double fitted = 0.0;
      Eigen::VectorXd beta;
      if (!nb.empty()) {
        beta = neighbor_coefficients(w, c, j, nb);
        for (int k = 0; k < static_cast<int>(nb.size()); ++k)
          fitted += c(nb[k], j) * beta(k);
      }
      const double cond_var = c(j, j) - fitted;
      if (!(cond_var > 0.0)) {
        throw NumericalError(
            "mle_precision_given_graph: nonpositive conditional variance at "
            "node " +
            std::to_string(j));
      }
      const double theta_jj = 1.0 / cond_var;
      omega.col(j).setZero();
      omega(j, j) = theta_jj;
      for (int k = 0; k < static_cast<int>(nb.size()); ++k)
        omega(nb[k], j) = -beta(k) * theta_jj;
    }
    omega = ((omega + omega.transpose()) / 2.0).eval();

    // Fixed-point check: inv(omega) must match c on edges and diagonal.
    Eigen::LLT<Eigen::MatrixXd> llt(omega);
    if (llt.info() != Eigen::Success) continue;  // not converged yet
    Eigen::MatrixXd sigma =
        llt.solve(Eigen::MatrixXd::Identity(p, p));
    double residual = 0.0;
    for (int j = 0; j < p; ++j) {
      residual = std::max(residual, std::abs(sigma(j, j) - c(j, j)));
      for (int i : graph.markov_blanket(j))
        residual = std::max(residual, std::abs(sigma(i, j) - c(i, j)));
    }
    if (residual <= tol) return PrecisionModel{omega, graph};
  }
  throw ConvergenceError(
      "mle_precision_given_graph: no fixed point within " +
      std::to_string(max_iter) + " sweeps (tol " + std::to_string(tol) + ")");
}

double predict_components(const PrecisionModel& model, const Dataset& test) {
  const Eigen::MatrixXd& omega = model.omega;
  const int p = static_cast<int>(omega.rows());
  if (test.p() != p) {
    throw InvalidInputError("predict_components: test data has p = " +
                            std::to_string(test.p()) + " but model has p = " +
                            std::to_string(p));
  }
  for (int i = 0; i < p; ++i) {
    if (omega(i, i) == 0.0) {
      throw InvalidInputError(
          "predict_components: zero diagonal at index " + std::to_string(i));
    }
  }
  // Xhat_i - X_i = -(Omega x)_i / omega_ii, so the error matrix is
  // (X Omega) scaled columnwise by 1 / omega_ii.
  Eigen::MatrixXd errors = test.values * omega;
  for (int i = 0; i < p; ++i) errors.col(i) /= omega(i, i);
  return errors.squaredNorm() / (static_cast<double>(test.n()) * p);
}

double deviance_statistic(const ScatterMatrix& scatter, const NodeSet& a,
                          const NodeSet& b, const NodeSet& c) {
  std::vector<char> seen(scatter.p(), 0);
  auto check_disjoint = [&seen](const NodeSet& nodes, const char* name) {
    for (int v : nodes) {
      if (v < 0 || v >= static_cast<int>(seen.size())) {
        throw InvalidInputError("deviance_statistic: node " +
                                std::to_string(v) + " out of range in set " +
                                name);
      }
      if (seen[v]) {
        throw InvalidInputError("deviance_statistic: sets not disjoint at "
                                "node " +
                                std::to_string(v));
      }
      seen[v] = 1;
    }
  };
  check_disjoint(a, "A");
  check_disjoint(b, "B");
  check_disjoint(c, "C");

  auto join = [](const NodeSet& x, const NodeSet& y) {
    NodeSet out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
  };
  const NodeSet ab = join(a, b);
  const NodeSet ac = join(a, c);
  const NodeSet abc = join(ab, c);
  const double stat = scatter.logdet_submatrix(abc) +
                      scatter.logdet_submatrix(a) -
                      scatter.logdet_submatrix(ab) -
                      scatter.logdet_submatrix(ac);
  return -static_cast<double>(scatter.n()) * stat;
}

double ebic(const PrecisionModel& model, const ScatterMatrix& scatter,
            double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidInputError("ebic: gamma must be in [0, 1]");
  }
  const Eigen::MatrixXd& omega = model.omega;
  const int p = static_cast<int>(omega.rows());
  if (scatter.p() != p) {
    throw InvalidInputError("ebic: scatter has p = " +
                            std::to_string(scatter.p()) +
                            " but model has p = " + std::to_string(p));
  }
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("ebic: precision matrix is not positive definite");
  }
  double logdet = 0.0;
  for (int i = 0; i < p; ++i)
    logdet += 2.0 * std::log(llt.matrixLLT()(i, i));

  const int n = scatter.n();
  const Eigen::MatrixXd c = scatter.matrix() / n;
  const double trace = omega.cwiseProduct(c).sum();
  int nonzeros = 0;
  for (int j = 1; j < p; ++j)
    for (int i = 0; i < j; ++i)
      if (omega(i, j) != 0.0) ++nonzeros;

  return n * trace - n * logdet +
         nonzeros * std::log(static_cast<double>(n)) +
         4.0 * nonzeros * gamma * std::log(static_cast<double>(p));
}

}  // namespace fmpl
