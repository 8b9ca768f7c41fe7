#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fmpl/dataset.hpp"
#include "fmpl/graph.hpp"
#include "fmpl/rng.hpp"

namespace fmpl {

// Primitive block shapes used to compose synthetic graphs. Blocks are laid
// out as disconnected components; kRandom wires each pair independently
// with edge_prob.
enum class BlockKind { kCycle, kPath, kStar, kGrid, kRandom };

struct BlockSpec {
  BlockKind kind = BlockKind::kCycle;
  double edge_prob = 0.1;  // kRandom only
};

struct GeneratorSpec {
  std::vector<BlockSpec> block_kinds;
  int block_size = 16;
  int replication = 1;
  std::uint64_t seed = 1;
  double offdiag_lo = 0.1;
  double offdiag_hi = 0.9;
  double negative_fraction = 0.5;
  double pd_margin = 0.1;

  int node_count() const {
    return block_size * replication * static_cast<int>(block_kinds.size());
  }
};

// A precision matrix tied to a graph: omega(i,j) is exactly zero iff the
// edge (i,j) is absent, and omega is symmetric positive definite.
struct PrecisionModel {
  Eigen::MatrixXd omega;
  UndirectedGraph graph;
};

BlockSpec parse_block_kind(const std::string& text);  // "cycle", "random:0.2", ...
std::string block_kind_to_string(const BlockSpec& block);

// Disjoint union of the replicated primitive blocks. Deterministic given
// the spec; random blocks draw pair inclusions from a stream derived from
// spec.seed, pairs in lexicographic order.
UndirectedGraph generate_graph(const GeneratorSpec& spec);

// Random graph-constrained precision matrix: per edge (lexicographic order)
// a magnitude uniform on [offdiag_lo, offdiag_hi] and a negative sign with
// probability negative_fraction; diagonal uniform on the same interval;
// then, when the smallest eigenvalue lambda_min is <= 0, the constant
// (-lambda_min + pd_margin) is added to every diagonal entry. The zero
// pattern always matches the graph exactly.
PrecisionModel generate_precision(const UndirectedGraph& graph, const GeneratorSpec& spec,
                                  Rng& rng);

// n i.i.d. rows from N_p(0, omega^{-1}): per row, p standard normals z in
// column order, then x = L^{-T} z with omega = L L'. Dataset is returned
// unstandardized.
Dataset sample_mvn(const PrecisionModel& model, int n, Rng& rng);

// The composite benchmark topology: one 64-node unit per 64 nodes, built
// from cycle/path/star/grid blocks of 16 nodes each. p must be a positive
// multiple of 64.
GeneratorSpec composite_spec(int p, std::uint64_t seed);

}  // namespace fmpl
