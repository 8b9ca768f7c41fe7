#include "fmpl/scatter.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "fmpl/errors.hpp"

namespace fmpl {

namespace {

std::string subset_to_string(const NodeSet& subset) {
  std::string out = "{";
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(subset[k]);
  }
  out += "}";
  return out;
}

void check_subset(const NodeSet& subset, int p) {
  for (int idx : subset) {
    if (idx < 0 || idx >= p)
      throw InvalidInputError("node index " + std::to_string(idx) + " out of range [0," +
                              std::to_string(p) + ")");
  }
}

}  // namespace

ScatterMatrix::ScatterMatrix(Eigen::MatrixXd s, int n) : s_(std::move(s)), n_(n) {
  if (s_.rows() != s_.cols()) throw InvalidInputError("scatter matrix must be square");
  const double scale = std::max(1.0, s_.cwiseAbs().maxCoeff());
  if (((s_ - s_.transpose()).cwiseAbs().maxCoeff()) > 1e-12 * scale)
    throw InvalidInputError("scatter matrix must be symmetric");
}

Eigen::MatrixXd ScatterMatrix::submatrix(const NodeSet& subset) const {
  check_subset(subset, p());
  const Eigen::Index k = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = s_(subset[a], subset[b]);
  return sub;
}

double ScatterMatrix::logdet_submatrix(const NodeSet& subset) const {
  if (subset.empty()) return 0.0;
  NodeSet sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  const Eigen::MatrixXd sub = submatrix(sorted);
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success)
    throw NumericalError("scatter submatrix " + subset_to_string(sorted) +
                         " is not positive definite");
  // log|S| = 2 * sum_i log L_ii
  double logdet = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    const double d = L(i, i);
    if (!(d > 0.0))
      throw NumericalError("scatter submatrix " + subset_to_string(sorted) +
                           " is not positive definite");
    logdet += std::log(d);
  }
  return 2.0 * logdet;
}

double ScatterMatrix::schur_conditional_variance(int j, const NodeSet& mb) const {
  check_subset(mb, p());
  if (j < 0 || j >= p()) throw InvalidInputError("node index out of range");
  for (int idx : mb)
    if (idx == j) throw InvalidInputError("conditioning set must not contain the target node");
  if (mb.empty()) return s_(j, j);
  NodeSet sorted = mb;
  std::sort(sorted.begin(), sorted.end());
  const Eigen::MatrixXd s_mb = submatrix(sorted);
  Eigen::VectorXd cross(static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t a = 0; a < sorted.size(); ++a)
    cross(static_cast<Eigen::Index>(a)) = s_(j, sorted[a]);
  Eigen::LLT<Eigen::MatrixXd> llt(s_mb);
  if (llt.info() != Eigen::Success)
    throw NumericalError("scatter submatrix " + subset_to_string(sorted) +
                         " is not positive definite");
  return s_(j, j) - cross.dot(llt.solve(cross));
}

ScatterMatrix scatter(const Dataset& data) {
  const int p = data.p();
  Eigen::MatrixXd s(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double v = data.values.col(i).dot(data.values.col(j));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return ScatterMatrix(std::move(s), data.n());
}

}  // namespace fmpl
