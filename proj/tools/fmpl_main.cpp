// fmpl command-line tool: simulate Gaussian graphical models, learn their
// structure from data by fractional marginal pseudo-likelihood, and evaluate
// recovery and prediction quality. Every file-producing command writes a
// manifest next to its outputs recording the resolved parameters, input
// digests, tool version, and wall-clock duration, so any run can be replayed.
//
// Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 non-convergence.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fmpl/dataset.hpp"
#include "fmpl/errors.hpp"
#include "fmpl/eval.hpp"
#include "fmpl/graph_io.hpp"
#include "fmpl/scatter.hpp"
#include "fmpl/scoring.hpp"
#include "fmpl/search.hpp"
#include "fmpl/synthgen.hpp"
#include "fmpl/version.hpp"

namespace {

using nlohmann::ordered_json;

// Shortest round-trip decimal form; deterministic across runs and platforms
// with the same floating-point behavior, unlike locale-aware streams.
std::string format_double(double value) {
  char buf[32];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw fmpl::InvalidInputError("cannot open input file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(buffer.str())));
  return std::string(hex);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw fmpl::InvalidInputError("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw fmpl::InvalidInputError("failed writing output file: " + path);
  }
}

// Wall-clock timer for manifests and benchmark rows.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Accumulates manifest content while a command runs, then writes
// <prefix>_manifest.json as the command's last action.
struct ManifestBuilder {
  explicit ManifestBuilder(const std::string& command) {
    json["command"] = command;
    json["version"] = fmpl::kVersion;
    json["parameters"] = ordered_json::object();
    json["seed"] = nullptr;
    json["input_digests"] = ordered_json::object();
  }

  void digest(const std::string& path) {
    json["input_digests"][path] = file_digest(path);
  }

  void write(const std::string& prefix, const Stopwatch& watch) {
    json["duration_seconds"] = watch.seconds();
    write_text_file(prefix + "_manifest.json", json.dump(2) + "\n");
  }

  ordered_json json;
};

bool parse_on_off(const std::string& value, const std::string& flag) {
  if (value == "on") return true;
  if (value == "off") return false;
  throw fmpl::InvalidInputError(flag + " must be 'on' or 'off', got '" +
                                value + "'");
}

fmpl::AssemblyMethod parse_method(const std::string& name) {
  if (name == "or") return fmpl::AssemblyMethod::kOr;
  if (name == "and") return fmpl::AssemblyMethod::kAnd;
  if (name == "hc") return fmpl::AssemblyMethod::kHillClimb;
  throw fmpl::InvalidInputError("unknown method '" + name +
                                "' (expected or, and, hc)");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    items.push_back(item.substr(first, last - first + 1));
  }
  return items;
}

// Line-oriented key=value file: blank lines and '#' comments are skipped,
// whitespace around keys and values is trimmed. Returns pairs in file order.
std::vector<std::pair<std::string, std::string>> read_kv_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw fmpl::InvalidInputError("cannot open config file: " + path);
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw fmpl::InvalidInputError("config line " + std::to_string(line_no) +
                                    " is not key=value: " + line);
    }
    auto trim = [](std::string text) {
      const auto lo = text.find_first_not_of(" \t");
      if (lo == std::string::npos) return std::string();
      const auto hi = text.find_last_not_of(" \t");
      return text.substr(lo, hi - lo + 1);
    };
    entries.emplace_back(trim(line.substr(first, eq - first)),
                         trim(line.substr(eq + 1)));
  }
  return entries;
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
  T out{};
  try {
    if constexpr (std::is_same_v<T, double>) {
      out = std::stod(value);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      out = std::stoull(value);
    } else {
      out = std::stoi(value);
    }
  } catch (const std::logic_error&) {
    throw fmpl::InvalidInputError("config key '" + key +
                                  "' has a non-numeric value: " + value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// learn

struct LearnArgs {
  std::string input;
  std::string out_prefix;
  std::string method = "and";
  std::string prior = "on";
  double prior_a = 0.5;
  double prior_b = 0.5;
  int max_mb = -1;
  std::string standardize = "on";
  int threads = 1;
};

int cmd_learn(const LearnArgs& args) {
  Stopwatch watch;
  ManifestBuilder manifest("learn");
  manifest.digest(args.input);

  fmpl::Dataset data = fmpl::load_dataset_csv_file(
      args.input, parse_on_off(args.standardize, "--standardize"));
  if (data.n() < 3) {
    throw fmpl::InvalidInputError("learn requires n >= 3 observations, got " +
                                  std::to_string(data.n()));
  }

  fmpl::SearchConfig config;
  config.method = parse_method(args.method);
  config.max_mb_size = args.max_mb;
  config.score_params.use_prior = parse_on_off(args.prior, "--prior");
  config.score_params.prior_a = args.prior_a;
  config.score_params.prior_b = args.prior_b;
  config.parallelism = args.threads;

  fmpl::ScatterMatrix s = fmpl::scatter(data);
  fmpl::UndirectedGraph graph = fmpl::learn_structure(s, config);
  fmpl::ScoreCard card = fmpl::global_fmpl_score(s, graph, config.score_params);

  fmpl::write_graph_file(args.out_prefix + "_graph.json", graph);

  ordered_json scores;
  scores["version"] = fmpl::kVersion;
  scores["method"] = args.method;
  scores["total"] = card.total;
  scores["local_log_scores"] = card.local_log_scores;
  scores["local_log_priors"] = card.local_log_priors;
  write_text_file(args.out_prefix + "_scores.json", scores.dump(2) + "\n");

  auto& params = manifest.json["parameters"];
  params["input"] = args.input;
  params["method"] = args.method;
  params["prior"] = args.prior;
  params["prior_a"] = args.prior_a;
  params["prior_b"] = args.prior_b;
  params["max_mb"] = config.resolved_max_mb_size(data.p(), data.n());
  params["standardize"] = args.standardize;
  params["threads"] = args.threads;
  params["out"] = args.out_prefix;
  manifest.write(args.out_prefix, watch);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string config;  // optional key=value file; explicit flags win
  int p = 0;
  std::string blocks;
  int block_size = 16;
  int replication = 1;
  int n = 0;
  std::uint64_t seed = 1;
  double offdiag_lo = 0.1;
  double offdiag_hi = 0.9;
  double negative_fraction = 0.5;
  double pd_margin = 0.1;
  std::string out_prefix;
};

// Fills fields from the config file unless the matching flag was given on
// the command line. Keys are the long flag names without the leading dashes.
void apply_simulate_config(SimulateArgs& args,
                           const std::map<std::string, CLI::Option*>& flags) {
  for (const auto& [key, value] : read_kv_file(args.config)) {
    auto it = flags.find(key);
    if (it == flags.end()) {
      throw fmpl::InvalidInputError("unknown simulate config key: " + key);
    }
    if (it->second->count() > 0) continue;
    if (key == "p") {
      args.p = parse_number<int>(value, key);
    } else if (key == "blocks") {
      args.blocks = value;
    } else if (key == "block-size") {
      args.block_size = parse_number<int>(value, key);
    } else if (key == "replication") {
      args.replication = parse_number<int>(value, key);
    } else if (key == "n") {
      args.n = parse_number<int>(value, key);
    } else if (key == "seed") {
      args.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "offdiag-lo") {
      args.offdiag_lo = parse_number<double>(value, key);
    } else if (key == "offdiag-hi") {
      args.offdiag_hi = parse_number<double>(value, key);
    } else if (key == "negative-fraction") {
      args.negative_fraction = parse_number<double>(value, key);
    } else if (key == "pd-margin") {
      args.pd_margin = parse_number<double>(value, key);
    } else {  // "out"
      args.out_prefix = value;
    }
  }
}

fmpl::GeneratorSpec spec_from_args(const SimulateArgs& args) {
  if (args.p > 0 && !args.blocks.empty()) {
    throw fmpl::InvalidInputError(
        "--p and --blocks are mutually exclusive; --p selects the composite "
        "topology");
  }
  fmpl::GeneratorSpec spec;
  if (args.p > 0) {
    spec = fmpl::composite_spec(args.p, args.seed);
  } else if (!args.blocks.empty()) {
    for (const std::string& token : split_list(args.blocks)) {
      spec.block_kinds.push_back(fmpl::parse_block_kind(token));
    }
    spec.block_size = args.block_size;
    spec.replication = args.replication;
    spec.seed = args.seed;
  } else {
    throw fmpl::InvalidInputError("simulate needs either --p or --blocks");
  }
  spec.offdiag_lo = args.offdiag_lo;
  spec.offdiag_hi = args.offdiag_hi;
  spec.negative_fraction = args.negative_fraction;
  spec.pd_margin = args.pd_margin;
  return spec;
}

// The seed protocol shared by simulate and benchmark: stream 0 drives random
// block wiring (inside generate_graph), stream 1 drives the precision draw
// and then the sampler.
fmpl::Dataset simulate_pipeline(const fmpl::GeneratorSpec& spec, int n,
                                fmpl::PrecisionModel* model_out) {
  fmpl::UndirectedGraph graph = fmpl::generate_graph(spec);
  fmpl::Rng rng(fmpl::Rng::derive_seed(spec.seed, 1));
  fmpl::PrecisionModel model = fmpl::generate_precision(graph, spec, rng);
  fmpl::Dataset data = fmpl::sample_mvn(model, n, rng);
  if (model_out != nullptr) *model_out = std::move(model);
  return data;
}

int cmd_simulate(const SimulateArgs& args) {
  Stopwatch watch;
  ManifestBuilder manifest("simulate");
  if (!args.config.empty()) manifest.digest(args.config);
  if (args.n < 1) {
    throw fmpl::InvalidInputError("simulate requires --n >= 1");
  }
  if (args.out_prefix.empty()) {
    throw fmpl::InvalidInputError("simulate requires --out");
  }
  fmpl::GeneratorSpec spec = spec_from_args(args);

  fmpl::PrecisionModel model{Eigen::MatrixXd(), fmpl::UndirectedGraph(1)};
  fmpl::Dataset data = simulate_pipeline(spec, args.n, &model);

  fmpl::write_csv_file(args.out_prefix + "_data.csv", data.values);
  fmpl::write_graph_file(args.out_prefix + "_truth.json", model.graph);
  fmpl::write_csv_file(args.out_prefix + "_precision.csv", model.omega);

  std::vector<std::string> block_names;
  for (const auto& block : spec.block_kinds) {
    block_names.push_back(fmpl::block_kind_to_string(block));
  }
  auto& params = manifest.json["parameters"];
  params["p"] = spec.node_count();
  params["blocks"] = block_names;
  params["block_size"] = spec.block_size;
  params["replication"] = spec.replication;
  params["n"] = args.n;
  params["offdiag_lo"] = spec.offdiag_lo;
  params["offdiag_hi"] = spec.offdiag_hi;
  params["negative_fraction"] = spec.negative_fraction;
  params["pd_margin"] = spec.pd_margin;
  params["out"] = args.out_prefix;
  manifest.json["seed"] = spec.seed;
  manifest.write(args.out_prefix, watch);
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string truth;
  std::string learned;
  std::string out_prefix;  // empty: print the report to stdout
};

ordered_json report_to_json(const fmpl::RecoveryReport& report, int p) {
  ordered_json j;
  j["version"] = fmpl::kVersion;
  j["p"] = p;
  j["hamming"] = report.hamming;
  j["tp_rate"] = report.tp_rate;
  j["fp_rate"] = report.fp_rate;
  j["edges_true"] = report.edges_true;
  j["edges_learned"] = report.edges_learned;
  return j;
}

int cmd_evaluate(const EvaluateArgs& args) {
  Stopwatch watch;
  ManifestBuilder manifest("evaluate");
  manifest.digest(args.truth);
  manifest.digest(args.learned);

  fmpl::UndirectedGraph truth = fmpl::read_graph_file(args.truth);
  fmpl::UndirectedGraph learned = fmpl::read_graph_file(args.learned);
  fmpl::RecoveryReport report = fmpl::recovery_report(truth, learned);
  ordered_json j = report_to_json(report, truth.p());

  if (args.out_prefix.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  write_text_file(args.out_prefix + "_report.json", j.dump(2) + "\n");
  auto& params = manifest.json["parameters"];
  params["truth"] = args.truth;
  params["learned"] = args.learned;
  params["out"] = args.out_prefix;
  manifest.write(args.out_prefix, watch);
  return 0;
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs {
  std::string train;
  std::string test;
  std::string graph;
  std::string standardize = "on";
  double tol = 1e-8;
  int max_iter = 500;
  std::string out_prefix;  // empty: print to stdout
};

int cmd_predict(const PredictArgs& args) {
  Stopwatch watch;
  ManifestBuilder manifest("predict");
  manifest.digest(args.train);
  manifest.digest(args.test);
  manifest.digest(args.graph);

  const bool standardize = parse_on_off(args.standardize, "--standardize");
  fmpl::Dataset train = fmpl::load_dataset_csv_file(args.train, standardize);
  fmpl::Dataset test = fmpl::load_dataset_csv_file(args.test, false);
  if (standardize) {
    // Test rows are mapped by the training statistics; the test set itself
    // is never peeked at for centering or scaling.
    test = fmpl::apply_standardization(test, train.column_means,
                                       train.column_sds);
  }
  fmpl::UndirectedGraph graph = fmpl::read_graph_file(args.graph);

  fmpl::PrecisionModel model =
      fmpl::mle_precision_given_graph(train, graph, args.tol, args.max_iter);
  const double mse = fmpl::predict_components(model, test);
  const int p = graph.p();
  const int pairs = p * (p - 1) / 2;
  const double density =
      pairs == 0 ? 0.0 : static_cast<double>(graph.edge_count()) / pairs;

  ordered_json j;
  j["version"] = fmpl::kVersion;
  j["p"] = p;
  j["mse"] = mse;
  j["edge_density"] = density;
  j["edges"] = graph.edge_count();

  if (args.out_prefix.empty()) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  write_text_file(args.out_prefix + "_predict.json", j.dump(2) + "\n");
  auto& params = manifest.json["parameters"];
  params["train"] = args.train;
  params["test"] = args.test;
  params["graph"] = args.graph;
  params["standardize"] = args.standardize;
  params["tol"] = args.tol;
  params["max_iter"] = args.max_iter;
  params["out"] = args.out_prefix;
  manifest.write(args.out_prefix, watch);
  return 0;
}

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkArgs {
  std::string config;
  std::string out;
  int threads = 1;
};

struct BenchmarkConfig {
  std::vector<int> ps;
  std::vector<int> ns;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;
};

BenchmarkConfig parse_benchmark_config(const std::string& path) {
  std::map<std::string, std::vector<std::string>> raw;
  for (const auto& [key, value] : read_kv_file(path)) {
    if (key != "p" && key != "n" && key != "seeds" && key != "methods") {
      throw fmpl::InvalidInputError("unknown benchmark config key: " + key);
    }
    raw[key] = split_list(value);
  }
  auto require =
      [&raw](const std::string& key) -> const std::vector<std::string>& {
    auto it = raw.find(key);
    if (it == raw.end() || it->second.empty()) {
      throw fmpl::InvalidInputError("benchmark config needs a nonempty '" +
                                    key + "' entry");
    }
    return it->second;
  };
  BenchmarkConfig config;
  for (const std::string& v : require("p")) {
    config.ps.push_back(parse_number<int>(v, "p"));
  }
  for (const std::string& v : require("n")) {
    config.ns.push_back(parse_number<int>(v, "n"));
  }
  for (const std::string& v : require("seeds")) {
    config.seeds.push_back(parse_number<std::uint64_t>(v, "seeds"));
  }
  for (const std::string& v : require("methods")) {
    parse_method(v);  // validates
    config.methods.push_back(v);
  }
  return config;
}

int cmd_benchmark(const BenchmarkArgs& args) {
  Stopwatch watch;
  ManifestBuilder manifest("benchmark");
  manifest.digest(args.config);
  BenchmarkConfig config = parse_benchmark_config(args.config);

  struct Cell {
    int done = 0;
    int failed = 0;
    double hamming = 0.0;
    double tp = 0.0;
    double fp = 0.0;
    double seconds = 0.0;
  };

  std::ostringstream csv;
  csv << "p,n,method,hamming,tp,fp,seconds,status\n";
  for (int p : config.ps) {
    for (int n : config.ns) {
      std::map<std::string, Cell> cells;
      for (std::uint64_t seed : config.seeds) {
        // One dataset per (p, n, seed), shared by every method.
        fmpl::GeneratorSpec spec = fmpl::composite_spec(p, seed);
        fmpl::PrecisionModel model{Eigen::MatrixXd(), fmpl::UndirectedGraph(1)};
        fmpl::Dataset raw = simulate_pipeline(spec, n, &model);
        fmpl::Dataset data = fmpl::make_dataset(raw.values, true);
        fmpl::ScatterMatrix s = fmpl::scatter(data);
        for (const std::string& method : config.methods) {
          Cell& cell = cells[method];
          fmpl::SearchConfig search;
          search.method = parse_method(method);
          search.parallelism = args.threads;
          try {
            Stopwatch learn_watch;
            fmpl::UndirectedGraph learned = fmpl::learn_structure(s, search);
            const double learn_seconds = learn_watch.seconds();
            fmpl::RecoveryReport report =
                fmpl::recovery_report(model.graph, learned);
            cell.done += 1;
            cell.hamming += report.hamming;
            cell.tp += report.tp_rate;
            cell.fp += report.fp_rate;
            cell.seconds += learn_seconds;
          } catch (const std::exception&) {
            cell.failed += 1;
          }
        }
      }
      for (const std::string& method : config.methods) {
        const Cell& cell = cells[method];
        csv << p << "," << n << "," << method << ",";
        if (cell.done > 0) {
          csv << format_double(cell.hamming / cell.done) << ","
              << format_double(cell.tp / cell.done) << ","
              << format_double(cell.fp / cell.done) << ","
              << format_double(cell.seconds / cell.done) << ",";
        } else {
          csv << "nan,nan,nan,nan,";
        }
        if (cell.failed == 0) {
          csv << "ok\n";
        } else {
          csv << "failed:" << cell.failed << "/" << (cell.done + cell.failed)
              << "\n";
        }
      }
    }
  }
  write_text_file(args.out, csv.str());

  auto& params = manifest.json["parameters"];
  params["config"] = args.config;
  params["threads"] = args.threads;
  params["out"] = args.out;
  manifest.write(args.out, watch);
  return 0;
}

// ---------------------------------------------------------------------------

void print_structured_error(const std::string& type,
                            const std::string& message) {
  ordered_json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Structure learning for Gaussian graphical models by fractional "
      "marginal pseudo-likelihood"};
  app.require_subcommand(1);

  LearnArgs learn;
  CLI::App* learn_cmd = app.add_subcommand(
      "learn", "Learn an undirected graph from a data CSV");
  learn_cmd->add_option("--input", learn.input, "Input data CSV")->required();
  learn_cmd->add_option("--out", learn.out_prefix, "Output path prefix")
      ->required();
  learn_cmd->add_option("--method", learn.method,
                        "Assembly method: or, and, hc (default and)");
  learn_cmd->add_option("--prior", learn.prior,
                        "Sparsity prior on/off (default on)");
  learn_cmd->add_option("--prior-a", learn.prior_a,
                        "Beta prior shape a (default 0.5)");
  learn_cmd->add_option("--prior-b", learn.prior_b,
                        "Beta prior shape b (default 0.5)");
  learn_cmd->add_option("--max-mb", learn.max_mb,
                        "Markov blanket size cap (default min(p-1, n-2))");
  learn_cmd->add_option("--standardize", learn.standardize,
                        "Standardize columns on/off (default on)");
  learn_cmd->add_option("--threads", learn.threads,
                        "Worker threads for blanket searches (default 1)")
      ->check(CLI::PositiveNumber);

  SimulateArgs simulate;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Generate a synthetic model and sample data from it");
  std::map<std::string, CLI::Option*> simulate_flags;
  simulate_cmd->add_option("--config", simulate.config,
                           "Key=value file with the options below (flags win)");
  simulate_flags["p"] = simulate_cmd->add_option(
      "--p", simulate.p,
      "Composite topology with this many nodes (multiple of 64)");
  simulate_flags["blocks"] = simulate_cmd->add_option(
      "--blocks", simulate.blocks,
      "Comma list of blocks: cycle, path, star, grid, random:<prob>");
  simulate_flags["block-size"] = simulate_cmd->add_option(
      "--block-size", simulate.block_size, "Nodes per block (default 16)");
  simulate_flags["replication"] = simulate_cmd->add_option(
      "--replication", simulate.replication,
      "Copies of the block list (default 1)");
  simulate_flags["n"] =
      simulate_cmd->add_option("--n", simulate.n, "Sample size");
  simulate_flags["seed"] =
      simulate_cmd->add_option("--seed", simulate.seed, "RNG seed (default 1)");
  simulate_flags["offdiag-lo"] = simulate_cmd->add_option(
      "--offdiag-lo", simulate.offdiag_lo,
      "Lower edge-weight magnitude (default 0.1)");
  simulate_flags["offdiag-hi"] = simulate_cmd->add_option(
      "--offdiag-hi", simulate.offdiag_hi,
      "Upper edge-weight magnitude (default 0.9)");
  simulate_flags["negative-fraction"] = simulate_cmd->add_option(
      "--negative-fraction", simulate.negative_fraction,
      "Probability of a negative edge weight (default 0.5)");
  simulate_flags["pd-margin"] = simulate_cmd->add_option(
      "--pd-margin", simulate.pd_margin,
      "Eigenvalue margin for the diagonal repair (default 0.1)");
  simulate_flags["out"] = simulate_cmd->add_option(
      "--out", simulate.out_prefix, "Output path prefix");

  EvaluateArgs evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Compare a learned graph against a true graph");
  evaluate_cmd->add_option("--truth", evaluate.truth, "True graph JSON")
      ->required();
  evaluate_cmd->add_option("--learned", evaluate.learned, "Learned graph JSON")
      ->required();
  evaluate_cmd->add_option("--out", evaluate.out_prefix,
                           "Output path prefix (default: print to stdout)");

  PredictArgs predict;
  CLI::App* predict_cmd = app.add_subcommand(
      "predict",
      "Fit the graph-constrained MLE on training data and report test MSE");
  predict_cmd->add_option("--train", predict.train, "Training data CSV")
      ->required();
  predict_cmd->add_option("--test", predict.test, "Test data CSV")->required();
  predict_cmd->add_option("--graph", predict.graph, "Graph JSON")->required();
  predict_cmd->add_option("--standardize", predict.standardize,
                          "Standardize by training statistics on/off (default on)");
  predict_cmd->add_option("--tol", predict.tol,
                          "MLE fixed-point tolerance (default 1e-8)");
  predict_cmd->add_option("--max-iter", predict.max_iter,
                          "MLE sweep limit (default 500)");
  predict_cmd->add_option("--out", predict.out_prefix,
                          "Output path prefix (default: print to stdout)");

  BenchmarkArgs benchmark;
  CLI::App* benchmark_cmd = app.add_subcommand(
      "benchmark",
      "Run a simulate-learn-evaluate grid from a key=value config file");
  benchmark_cmd->add_option("--config", benchmark.config,
                            "Config file: p=..., n=..., seeds=..., methods=...")
      ->required();
  benchmark_cmd->add_option("--out", benchmark.out, "Output CSV path")
      ->required();
  benchmark_cmd->add_option("--threads", benchmark.threads,
                            "Worker threads for blanket searches (default 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_structured_error("input", e.what());
    return 2;
  }

  try {
    if (learn_cmd->parsed()) return cmd_learn(learn);
    if (simulate_cmd->parsed()) {
      if (!simulate.config.empty()) {
        apply_simulate_config(simulate, simulate_flags);
      }
      return cmd_simulate(simulate);
    }
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate);
    if (predict_cmd->parsed()) return cmd_predict(predict);
    if (benchmark_cmd->parsed()) return cmd_benchmark(benchmark);
  } catch (const fmpl::InvalidInputError& e) {
    print_structured_error("input", e.what());
    return 2;
  } catch (const fmpl::ConvergenceError& e) {
    print_structured_error("convergence", e.what());
    return 4;
  } catch (const fmpl::NumericalError& e) {
    print_structured_error("numerical", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_structured_error("internal", e.what());
    return 3;
  }
  return 0;
}
