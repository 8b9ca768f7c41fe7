#include "fmpl/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fmpl/errors.hpp"

namespace fmpl {

namespace {

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  // Trailing whitespace is fine, anything else is not.
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') return false;
  return std::isfinite(out);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

void standardize_in_place(Dataset& data) {
  const int n = data.n();
  const int p = data.p();
  data.column_means.resize(p);
  data.column_sds.resize(p);
  for (int j = 0; j < p; ++j) {
    const double mean = data.values.col(j).mean();
    const double ss = (data.values.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / (n - 1));
    if (!(sd > 0.0)) {
      throw InvalidInputError("cannot standardize: column " + std::to_string(j) +
                              " is constant");
    }
    data.values.col(j) = (data.values.col(j).array() - mean) / sd;
    data.column_means[j] = mean;
    data.column_sds[j] = sd;
  }
  data.standardized = true;
}

}  // namespace

Dataset make_dataset(const Eigen::MatrixXd& values, bool standardize) {
  if (values.rows() < 2) throw InvalidInputError("dataset needs at least 2 rows");
  if (values.cols() < 1) throw InvalidInputError("dataset needs at least 1 column");
  if (!values.allFinite()) throw InvalidInputError("dataset contains non-finite entries");
  Dataset data;
  data.values = values;
  if (standardize) standardize_in_place(data);
  return data;
}

Dataset load_dataset_csv(std::istream& in, bool standardize) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> tokens = split_commas(line);
    std::vector<double> row(tokens.size());
    bool ok = true;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (!parse_double(tokens[k], row[k])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      if (first_content_line) {
        first_content_line = false;  // header row, skip it
        continue;
      }
      throw InvalidInputError("non-numeric cell on line " + std::to_string(line_no));
    }
    first_content_line = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidInputError("ragged row on line " + std::to_string(line_no) + ": expected " +
                              std::to_string(rows.front().size()) + " cells, got " +
                              std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw InvalidInputError("dataset needs at least 2 observation rows");
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return make_dataset(values, standardize);
}

Dataset load_dataset_csv_file(const std::string& path, bool standardize) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  return load_dataset_csv(in, standardize);
}

Dataset apply_standardization(const Dataset& data, const std::vector<double>& means,
                              const std::vector<double>& sds) {
  const int p = data.p();
  if (static_cast<int>(means.size()) != p || static_cast<int>(sds.size()) != p)
    throw InvalidInputError("standardization parameters do not match column count");
  Dataset out;
  out.values = data.values;
  for (int j = 0; j < p; ++j) {
    if (!(sds[j] > 0.0)) throw InvalidInputError("non-positive sd for column " + std::to_string(j));
    out.values.col(j) = (out.values.col(j).array() - means[j]) / sds[j];
  }
  return out;
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& values) {
  char buf[64];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", values(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Eigen::MatrixXd& values) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  write_csv(out, values);
}

Eigen::MatrixXd read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> tokens = split_commas(line);
    std::vector<double> row(tokens.size());
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      if (!parse_double(tokens[k], row[k]))
        throw InvalidInputError("non-numeric cell on line " + std::to_string(line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidInputError("ragged row on line " + std::to_string(line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInputError("empty matrix file: " + path);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

}  // namespace fmpl
