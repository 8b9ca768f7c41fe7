#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "fmpl/dataset.hpp"
#include "fmpl/rng.hpp"
#include "fmpl/synthgen.hpp"

namespace testutil {

// Path to the fmpl binary, forwarded by the custom test main from the
// --cli=<path> argument; empty when the harness did not pass one.
extern std::string cli_path;

// Deterministic n x p matrix of standard normals.
Eigen::MatrixXd random_normal_matrix(int n, int p, std::uint64_t seed);

// Random symmetric positive-definite matrix, built as X'X with more rows
// than columns plus a small ridge so it is comfortably PD.
Eigen::MatrixXd random_spd(int p, std::uint64_t seed);

// Model + data generation with the same seed discipline as the CLI: stream
// 0 wires random blocks, stream 1 drives the precision draw and sampling.
fmpl::PrecisionModel generate_model(const fmpl::GeneratorSpec& spec);
fmpl::Dataset sample_model(const fmpl::PrecisionModel& model,
                           const fmpl::GeneratorSpec& spec, int n);

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the fmpl binary through the shell inside workdir, capturing streams.
CommandResult run_cli(const std::string& args, const std::string& workdir);

std::string make_temp_dir(const std::string& tag);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
bool file_exists(const std::string& path);

}  // namespace testutil
