#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fmpl/dataset.hpp"
#include "fmpl/errors.hpp"
#include "helpers.hpp"

using fmpl::Dataset;
using fmpl::InvalidInputError;

TEST_CASE("make_dataset passes raw values through") {
  Eigen::MatrixXd x(2, 1);
  x << 1, -1;
  const Dataset data = fmpl::make_dataset(x, false);
  CHECK(data.n() == 2);
  CHECK(data.p() == 1);
  CHECK(data.values(0, 0) == 1.0);
  CHECK(data.values(1, 0) == -1.0);
  CHECK_FALSE(data.standardized);
  CHECK(data.column_means.empty());
}

TEST_CASE("standardization centers and scales each column") {
  Eigen::MatrixXd x(4, 2);
  x << 1, -3, 2, 1, 3, 2, 4, 0;  // column means 2.5 and 0
  const Dataset data = fmpl::make_dataset(x, true);
  REQUIRE(data.standardized);
  REQUIRE(data.column_means.size() == 2);
  CHECK(data.column_means[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(data.column_means[1] == doctest::Approx(0.0).epsilon(1e-12));
  for (int j = 0; j < 2; ++j) {
    const double mean = data.values.col(j).mean();
    const double sd = std::sqrt(
        (data.values.col(j).array() - mean).square().sum() / (data.n() - 1));
    CHECK(std::abs(mean) < 1e-10);
    CHECK(std::abs(sd - 1.0) < 1e-8);
  }
}

TEST_CASE("constant column is an error only when standardizing") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 2, 2, 2, 3, 2;
  CHECK_THROWS_AS(fmpl::make_dataset(x, true), InvalidInputError);
  const Dataset raw = fmpl::make_dataset(x, false);
  CHECK(raw.values.col(1).isConstant(2.0));
}

TEST_CASE("invalid shapes and values are rejected") {
  Eigen::MatrixXd one_row(1, 2);
  one_row << 1, 2;
  CHECK_THROWS_AS(fmpl::make_dataset(one_row, false), InvalidInputError);

  Eigen::MatrixXd with_nan(2, 2);
  with_nan << 1, 2, std::nan(""), 4;
  CHECK_THROWS_AS(fmpl::make_dataset(with_nan, false), InvalidInputError);

  Eigen::MatrixXd with_inf(2, 2);
  with_inf << 1, 2, INFINITY, 4;
  CHECK_THROWS_AS(fmpl::make_dataset(with_inf, false), InvalidInputError);
}

TEST_CASE("csv loading handles headers, CRLF, and malformed input") {
  SUBCASE("header row is auto-detected") {
    std::istringstream in("a,b\n1,2\n3,4\n");
    const Dataset data = fmpl::load_dataset_csv(in, false);
    CHECK(data.n() == 2);
    CHECK(data.p() == 2);
    CHECK(data.values(0, 0) == 1.0);
    CHECK(data.values(1, 1) == 4.0);
  }
  SUBCASE("headerless numeric input is taken as data") {
    std::istringstream in("1,2\n3,4\n5,6\n");
    const Dataset data = fmpl::load_dataset_csv(in, false);
    CHECK(data.n() == 3);
  }
  SUBCASE("scientific notation and negatives parse") {
    std::istringstream in("-1.5e2,0.25\n3e-3,-7\n");
    const Dataset data = fmpl::load_dataset_csv(in, false);
    CHECK(data.values(0, 0) == -150.0);
    CHECK(data.values(1, 0) == 0.003);
  }
  SUBCASE("CRLF line endings are tolerated") {
    std::istringstream in("x,y\r\n1,2\r\n3,4\r\n");
    const Dataset data = fmpl::load_dataset_csv(in, false);
    CHECK(data.n() == 2);
    CHECK(data.values(1, 0) == 3.0);
  }
  SUBCASE("ragged rows are rejected") {
    std::istringstream in("1,2\n3,4,5\n");
    CHECK_THROWS_AS(fmpl::load_dataset_csv(in, false), InvalidInputError);
  }
  SUBCASE("non-numeric cell past the header is rejected") {
    std::istringstream in("1,2\n3,oops\n");
    CHECK_THROWS_AS(fmpl::load_dataset_csv(in, false), InvalidInputError);
  }
  SUBCASE("fewer than two observation rows is rejected") {
    std::istringstream one("1,2\n");
    CHECK_THROWS_AS(fmpl::load_dataset_csv(one, false), InvalidInputError);
    std::istringstream header_only("a,b\n1,2\n");
    CHECK_THROWS_AS(fmpl::load_dataset_csv(header_only, false),
                    InvalidInputError);
  }
  SUBCASE("missing file is rejected") {
    CHECK_THROWS_AS(fmpl::load_dataset_csv_file("/nonexistent/file.csv", false),
                    InvalidInputError);
  }
}

TEST_CASE("csv write/read round trip is exact") {
  const Eigen::MatrixXd x = testutil::random_normal_matrix(7, 3, 20240501);
  std::ostringstream out;
  fmpl::write_csv(out, x);
  std::istringstream in(out.str());
  const Dataset data = fmpl::load_dataset_csv(in, false);
  REQUIRE(data.n() == 7);
  REQUIRE(data.p() == 3);
  CHECK((data.values - x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_standardization maps by the given statistics") {
  Eigen::MatrixXd x(2, 2);
  x << 10, 4, 20, 8;
  const Dataset raw = fmpl::make_dataset(x, false);
  const Dataset mapped =
      fmpl::apply_standardization(raw, {10.0, 4.0}, {5.0, 2.0});
  CHECK(mapped.values(0, 0) == 0.0);
  CHECK(mapped.values(1, 0) == 2.0);
  CHECK(mapped.values(0, 1) == 0.0);
  CHECK(mapped.values(1, 1) == 2.0);

  CHECK_THROWS_AS(fmpl::apply_standardization(raw, {1.0}, {1.0, 1.0}),
                  InvalidInputError);
  CHECK_THROWS_AS(fmpl::apply_standardization(raw, {0.0, 0.0}, {1.0, 0.0}),
                  InvalidInputError);
}

TEST_CASE("train statistics transform a test set consistently") {
  const Eigen::MatrixXd big = testutil::random_normal_matrix(600, 3, 77);
  Eigen::MatrixXd train_x = big.topRows(400);
  Eigen::MatrixXd test_x = big.bottomRows(200);
  // Shift and stretch both splits the same way, then undo with train stats.
  for (int j = 0; j < 3; ++j) {
    train_x.col(j) = (train_x.col(j).array() * (j + 2.0) + 5.0 * j).matrix();
    test_x.col(j) = (test_x.col(j).array() * (j + 2.0) + 5.0 * j).matrix();
  }
  const Dataset train = fmpl::make_dataset(train_x, true);
  const Dataset test = fmpl::apply_standardization(
      fmpl::make_dataset(test_x, false), train.column_means, train.column_sds);
  // The mapped test columns should be near-standardized (same population).
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(test.values.col(j).mean()) < 0.5);
    const double sd = std::sqrt(
        (test.values.col(j).array() - test.values.col(j).mean()).square().sum() /
        (test.n() - 1));
    CHECK(sd == doctest::Approx(1.0).epsilon(0.5));
  }
}
