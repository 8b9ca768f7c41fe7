#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fmpl/dataset.hpp"

namespace fmpl {

using NodeSet = std::vector<int>;  // node indices, 0-based

// The unscaled cross-product matrix S = X' X of a dataset, with
// log-determinant services for arbitrary principal submatrices. All
// per-node scores consume S only through these services. Immutable.
class ScatterMatrix {
 public:
  ScatterMatrix(Eigen::MatrixXd s, int n);

  const Eigen::MatrixXd& matrix() const { return s_; }
  int n() const { return n_; }
  int p() const { return static_cast<int>(s_.rows()); }

  // log|S_subset| of the principal submatrix indexed by subset. The empty
  // subset returns 0 (|S_empty| := 1). The subset is canonicalized by
  // sorting, so the result is bit-identical under reordering. Throws
  // NumericalError when the submatrix is not positive definite.
  double logdet_submatrix(const NodeSet& subset) const;

  // Residual (partial) variance of node j after conditioning on mb:
  // S_jj - S_{j,mb} (S_mb)^{-1} S_{mb,j}. Computed by a direct Schur
  // complement, independent of the log-determinant route; the two agree
  // through the identity exp(logdet(fa) - logdet(mb)).
  double schur_conditional_variance(int j, const NodeSet& mb) const;

  // Dense copy of the principal submatrix (indices in the given order).
  Eigen::MatrixXd submatrix(const NodeSet& subset) const;

 private:
  Eigen::MatrixXd s_;
  int n_;
};

// S = X' X of the dataset's value matrix; exactly symmetric by construction.
ScatterMatrix scatter(const Dataset& data);

}  // namespace fmpl
