#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace fmpl {

// An n x p matrix of observations (rows = samples) plus standardization
// metadata. Immutable after construction.
struct Dataset {
  Eigen::MatrixXd values;  // n x p
  bool standardized = false;
  std::vector<double> column_means;  // recorded when standardization is applied
  std::vector<double> column_sds;

  int n() const { return static_cast<int>(values.rows()); }
  int p() const { return static_cast<int>(values.cols()); }
};

// Builds a dataset from an in-memory matrix. Validates n >= 2 and finiteness;
// if standardize is set, centers each column and scales by the sample
// standard deviation (divisor n-1), recording the applied means/sds.
// A constant column under standardization is an error.
Dataset make_dataset(const Eigen::MatrixXd& values, bool standardize);

// Parses comma-separated numeric text (rows = observations, '.' decimal
// separator). A single leading header row is skipped when its first row
// contains any non-numeric cell. Ragged rows, non-numeric or non-finite
// cells, and fewer than two data rows are errors.
Dataset load_dataset_csv(std::istream& in, bool standardize);
Dataset load_dataset_csv_file(const std::string& path, bool standardize);

// Applies a recorded standardization (e.g. the training set's) to another
// dataset: x -> (x - mean) / sd per column. Shape and sd validity checked.
Dataset apply_standardization(const Dataset& data, const std::vector<double>& means,
                              const std::vector<double>& sds);

// Writes values as plain numeric CSV with round-trip precision.
void write_csv(std::ostream& out, const Eigen::MatrixXd& values);
void write_csv_file(const std::string& path, const Eigen::MatrixXd& values);

// Reads a plain numeric CSV into a matrix (no header handling, used for
// square matrices such as precision matrices).
Eigen::MatrixXd read_matrix_csv_file(const std::string& path);

}  // namespace fmpl
