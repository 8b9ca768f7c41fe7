#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fmpl/dataset.hpp"
#include "fmpl/errors.hpp"
#include "fmpl/scatter.hpp"
#include "helpers.hpp"

using fmpl::NodeSet;
using fmpl::ScatterMatrix;

namespace {

ScatterMatrix scatter_of(const Eigen::MatrixXd& x) {
  return fmpl::scatter(fmpl::make_dataset(x, false));
}

// Reference log-determinant via Eigen's pivoted LU, independent of the
// Cholesky route used by the library.
double logdet_lu(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  return Eigen::FullPivLU<Eigen::MatrixXd>(m).matrixLU().diagonal().array().abs().log().sum();
}

Eigen::MatrixXd pick(const Eigen::MatrixXd& s, const NodeSet& subset) {
  Eigen::MatrixXd out(subset.size(), subset.size());
  for (size_t a = 0; a < subset.size(); ++a)
    for (size_t b = 0; b < subset.size(); ++b)
      out(a, b) = s(subset[a], subset[b]);
  return out;
}

}  // namespace

TEST_CASE("scatter is the exact cross-product matrix") {
  Eigen::MatrixXd x(2, 1);
  x << 1, -1;
  CHECK(scatter_of(x).matrix()(0, 0) == 2.0);

  // Triple-loop oracle on a small random matrix.
  const Eigen::MatrixXd y = testutil::random_normal_matrix(5, 3, 11);
  const ScatterMatrix s = scatter_of(y);
  CHECK(s.n() == 5);
  CHECK(s.p() == 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double acc = 0.0;
      for (int r = 0; r < 5; ++r) acc += y(r, a) * y(r, b);
      CHECK(s.matrix()(a, b) == doctest::Approx(acc).epsilon(1e-12));
    }
  }
  // Exact symmetry, not merely approximate.
  CHECK(s.matrix()(0, 1) == s.matrix()(1, 0));
  CHECK(s.matrix()(0, 2) == s.matrix()(2, 0));
}

TEST_CASE("logdet_submatrix handles simple closed forms") {
  const ScatterMatrix ident(Eigen::MatrixXd::Identity(4, 4), 10);
  CHECK(ident.logdet_submatrix({}) == 0.0);
  CHECK(ident.logdet_submatrix({0, 2}) == doctest::Approx(0.0).epsilon(1e-15));

  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;  // det = 3
  const ScatterMatrix s(m, 10);
  CHECK(s.logdet_submatrix({0, 1}) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(s.logdet_submatrix({0}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("subset order does not change the result at all") {
  const Eigen::MatrixXd spd = testutil::random_spd(6, 42);
  const ScatterMatrix s(spd, 20);
  const double reference = s.logdet_submatrix({1, 3, 4});
  CHECK(s.logdet_submatrix({4, 1, 3}) == reference);
  CHECK(s.logdet_submatrix({3, 4, 1}) == reference);
}

TEST_CASE("logdet_submatrix matches an LU oracle on random SPD inputs") {
  std::mt19937_64 pick_rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + static_cast<int>(pick_rng() % 11);  // 2..12
    const Eigen::MatrixXd spd = testutil::random_spd(p, 9000 + trial);
    const ScatterMatrix s(spd, 4 * p);
    // Random nonempty subset.
    NodeSet subset;
    for (int j = 0; j < p; ++j)
      if (pick_rng() % 2 == 0) subset.push_back(j);
    if (subset.empty()) subset.push_back(static_cast<int>(pick_rng() % p));
    const double got = s.logdet_submatrix(subset);
    const double want = logdet_lu(pick(spd, subset));
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("determinant ratios agree with the Schur conditional variance") {
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 3 + trial % 10;  // 3..12
    const Eigen::MatrixXd spd = testutil::random_spd(p, 31000 + trial);
    const ScatterMatrix s(spd, 4 * p);
    const int j = trial % p;
    NodeSet mb;
    for (int k = 0; k < p; ++k)
      if (k != j && (trial + k) % 3 != 0) mb.push_back(k);
    NodeSet fa = mb;
    fa.push_back(j);
    std::sort(fa.begin(), fa.end());
    const double via_logdet =
        std::exp(s.logdet_submatrix(fa) - s.logdet_submatrix(mb));
    const double via_schur = s.schur_conditional_variance(j, mb);
    CHECK(via_schur == doctest::Approx(via_logdet).epsilon(1e-9));
  }
}

TEST_CASE("schur_conditional_variance closed forms") {
  const ScatterMatrix ident(Eigen::MatrixXd::Identity(3, 3), 10);
  CHECK(ident.schur_conditional_variance(0, {}) == 1.0);
  CHECK(ident.schur_conditional_variance(1, {0, 2}) ==
        doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const ScatterMatrix s(m, 10);
  // 2 - 1 * (1/2) * 1 = 1.5
  CHECK(s.schur_conditional_variance(0, {1}) ==
        doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(s.schur_conditional_variance(0, {0}),
                  fmpl::InvalidInputError);
}

TEST_CASE("conditioning on more variables never increases residual variance") {
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 5 + trial % 6;
    const Eigen::MatrixXd spd = testutil::random_spd(p, 52000 + trial);
    const ScatterMatrix s(spd, 4 * p);
    const int j = trial % p;
    NodeSet mb;
    double prev = s.schur_conditional_variance(j, mb);
    for (int k = 0; k < p; ++k) {
      if (k == j) continue;
      mb.push_back(k);
      const double cur = s.schur_conditional_variance(j, mb);
      CHECK(cur <= prev + 1e-9 * std::abs(prev));
      prev = cur;
    }
  }
}

TEST_CASE("standardized data yields diagonal entries of n-1") {
  const Eigen::MatrixXd x = testutil::random_normal_matrix(40, 4, 5);
  const ScatterMatrix s = fmpl::scatter(fmpl::make_dataset(x, true));
  for (int j = 0; j < 4; ++j)
    CHECK(s.matrix()(j, j) == doctest::Approx(39.0).epsilon(1e-8));
}

TEST_CASE("rank-deficient submatrices raise NumericalError") {
  // With n=2 rows, any submatrix of size > 2 of X'X is singular.
  const Eigen::MatrixXd x = testutil::random_normal_matrix(2, 3, 8);
  const ScatterMatrix s = scatter_of(x);
  CHECK_THROWS_AS(s.logdet_submatrix({0, 1, 2}), fmpl::NumericalError);
}

TEST_CASE("constructor validates the matrix") {
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0.2, 1;
  CHECK_THROWS_AS(ScatterMatrix(asym, 5), fmpl::InvalidInputError);

  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(ScatterMatrix(rect, 5), fmpl::InvalidInputError);
}
