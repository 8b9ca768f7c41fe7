#include "helpers.hpp"

#include <sys/stat.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testutil {

std::string cli_path;

Eigen::MatrixXd random_normal_matrix(int n, int p, std::uint64_t seed) {
  fmpl::Rng rng(seed);
  Eigen::MatrixXd m(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) m(i, j) = rng.normal();
  return m;
}

Eigen::MatrixXd random_spd(int p, std::uint64_t seed) {
  const Eigen::MatrixXd x = random_normal_matrix(3 * p + 4, p, seed);
  Eigen::MatrixXd s = x.transpose() * x;
  s = ((s + s.transpose()) / 2.0).eval();
  s.diagonal().array() += 1e-3;
  return s;
}

fmpl::PrecisionModel generate_model(const fmpl::GeneratorSpec& spec) {
  fmpl::UndirectedGraph graph = fmpl::generate_graph(spec);
  fmpl::Rng rng(fmpl::Rng::derive_seed(spec.seed, 1));
  return fmpl::generate_precision(graph, spec, rng);
}

fmpl::Dataset sample_model(const fmpl::PrecisionModel& model,
                           const fmpl::GeneratorSpec& spec, int n) {
  // Reproduces the precision draw so the sampler continues the stream at
  // the same point as the combined pipeline.
  fmpl::Rng rng(fmpl::Rng::derive_seed(spec.seed, 1));
  fmpl::generate_precision(model.graph, spec, rng);
  return fmpl::sample_mvn(model, n, rng);
}

CommandResult run_cli(const std::string& args, const std::string& workdir) {
  if (cli_path.empty()) {
    throw std::runtime_error("no --cli=<path> argument was passed to the test binary");
  }
  const std::string out_file = workdir + "/cli_stdout.txt";
  const std::string err_file = workdir + "/cli_stderr.txt";
  const std::string command = "cd '" + workdir + "' && '" + cli_path + "' " +
                              args + " > '" + out_file + "' 2> '" + err_file +
                              "'";
  const int status = std::system(command.c_str());
  CommandResult result;
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  result.out = read_file(out_file);
  result.err = read_file(err_file);
  return result;
}

std::string make_temp_dir(const std::string& tag) {
  std::string tmpl = "/tmp/fmpl_" + tag + "_XXXXXX";
  if (mkdtemp(tmpl.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  }
  return tmpl;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

bool file_exists(const std::string& path) {
  struct stat st;
  return stat(path.c_str(), &st) == 0;
}

}  // namespace testutil
