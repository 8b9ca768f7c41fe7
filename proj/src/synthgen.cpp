#include "fmpl/synthgen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "fmpl/errors.hpp"

namespace fmpl {

namespace {

void add_block_edges(UndirectedGraph& graph, const BlockSpec& block, int base, int size,
                     Rng& rng) {
  switch (block.kind) {
    case BlockKind::kCycle:
      for (int i = 0; i + 1 < size; ++i) graph.add_edge(base + i, base + i + 1);
      if (size > 2) graph.add_edge(base, base + size - 1);
      break;
    case BlockKind::kPath:
      for (int i = 0; i + 1 < size; ++i) graph.add_edge(base + i, base + i + 1);
      break;
    case BlockKind::kStar:
      for (int i = 1; i < size; ++i) graph.add_edge(base, base + i);
      break;
    case BlockKind::kGrid: {
      // Near-square row-major layout; the last row may be ragged.
      const int rows = static_cast<int>(std::floor(std::sqrt(static_cast<double>(size))));
      const int cols = (size + rows - 1) / rows;
      for (int i = 0; i < size; ++i) {
        const int r = i / cols;
        const int c = i % cols;
        if (c + 1 < cols && i + 1 < size) graph.add_edge(base + i, base + i + 1);
        if ((r + 1) * cols + c < size) graph.add_edge(base + i, base + (r + 1) * cols + c);
      }
      break;
    }
    case BlockKind::kRandom:
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
          if (rng.uniform01() < block.edge_prob) graph.add_edge(base + i, base + j);
      break;
  }
}

}  // namespace

BlockSpec parse_block_kind(const std::string& text) {
  if (text == "cycle") return {BlockKind::kCycle, 0.0};
  if (text == "path") return {BlockKind::kPath, 0.0};
  if (text == "star") return {BlockKind::kStar, 0.0};
  if (text == "grid") return {BlockKind::kGrid, 0.0};
  if (text.rfind("random:", 0) == 0) {
    const double prob = std::strtod(text.c_str() + 7, nullptr);
    if (!(prob >= 0.0 && prob <= 1.0))
      throw InvalidInputError("random block probability must be in [0,1]: " + text);
    return {BlockKind::kRandom, prob};
  }
  throw InvalidInputError("unknown block kind: " + text +
                          " (expected cycle|path|star|grid|random:<prob>)");
}

std::string block_kind_to_string(const BlockSpec& block) {
  switch (block.kind) {
    case BlockKind::kCycle: return "cycle";
    case BlockKind::kPath: return "path";
    case BlockKind::kStar: return "star";
    case BlockKind::kGrid: return "grid";
    case BlockKind::kRandom: return "random:" + std::to_string(block.edge_prob);
  }
  return "?";
}

UndirectedGraph generate_graph(const GeneratorSpec& spec) {
  if (spec.block_kinds.empty()) throw InvalidInputError("generator needs at least one block kind");
  if (spec.block_size < 2) throw InvalidInputError("block size must be at least 2");
  if (spec.replication < 1) throw InvalidInputError("replication must be at least 1");
  UndirectedGraph graph(spec.node_count());
  Rng rng(Rng::derive_seed(spec.seed, 0));
  int base = 0;
  for (int rep = 0; rep < spec.replication; ++rep) {
    for (const BlockSpec& block : spec.block_kinds) {
      add_block_edges(graph, block, base, spec.block_size, rng);
      base += spec.block_size;
    }
  }
  return graph;
}

PrecisionModel generate_precision(const UndirectedGraph& graph, const GeneratorSpec& spec,
                                  Rng& rng) {
  if (!(spec.offdiag_lo > 0.0) || !(spec.offdiag_hi > spec.offdiag_lo))
    throw InvalidInputError("off-diagonal range must satisfy 0 < lo < hi");
  if (!(spec.pd_margin > 0.0)) throw InvalidInputError("pd margin must be positive");
  const int p = graph.p();
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(p, p);
  for (const auto& [i, j] : graph.edges()) {
    const double magnitude = rng.uniform(spec.offdiag_lo, spec.offdiag_hi);
    const double value = rng.uniform01() < spec.negative_fraction ? -magnitude : magnitude;
    omega(i, j) = value;
    omega(j, i) = value;
  }
  for (int i = 0; i < p; ++i) omega(i, i) = rng.uniform(spec.offdiag_lo, spec.offdiag_hi);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(omega, Eigen::EigenvaluesOnly);
  const double lambda_min = eigen.eigenvalues().minCoeff();
  if (lambda_min <= 0.0)
    omega.diagonal().array() += -lambda_min + spec.pd_margin;

  return PrecisionModel{std::move(omega), graph};
}

Dataset sample_mvn(const PrecisionModel& model, int n, Rng& rng) {
  if (n < 1) throw InvalidInputError("sample size must be at least 1");
  const int p = static_cast<int>(model.omega.rows());
  Eigen::LLT<Eigen::MatrixXd> llt(model.omega);
  if (llt.info() != Eigen::Success)
    throw NumericalError("precision matrix is not positive definite");
  // omega = L L', so x = L^{-T} z has covariance omega^{-1}.
  const Eigen::MatrixXd upper = llt.matrixU();
  Eigen::MatrixXd values(n, p);
  Eigen::VectorXd z(p);
  for (int row = 0; row < n; ++row) {
    for (int k = 0; k < p; ++k) z(k) = rng.normal();
    values.row(row) = upper.triangularView<Eigen::Upper>().solve(z).transpose();
  }
  Dataset data;
  data.values = std::move(values);
  return data;
}

GeneratorSpec composite_spec(int p, std::uint64_t seed) {
  if (p < 64 || p % 64 != 0)
    throw InvalidInputError("composite topology needs p to be a positive multiple of 64");
  GeneratorSpec spec;
  spec.block_kinds = {{BlockKind::kCycle, 0.0},
                      {BlockKind::kPath, 0.0},
                      {BlockKind::kStar, 0.0},
                      {BlockKind::kGrid, 0.0}};
  spec.block_size = 16;
  spec.replication = p / 64;
  spec.seed = seed;
  return spec;
}

}  // namespace fmpl
