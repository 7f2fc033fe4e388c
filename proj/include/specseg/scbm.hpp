#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "specseg/sparse_matrix.hpp"

namespace specseg {

// Stochastic co-block model: m left (sentence) nodes in k1 blocks, n right
// (word) nodes in k2 blocks, edge probability B[block(u)][block(v)].
struct ScbmSpec {
  std::size_t m = 200;
  std::size_t n = 500;
  Eigen::MatrixXd block_probabilities;  // k1 x k2
  std::uint64_t seed = 0;

  std::size_t left_blocks() const { return static_cast<std::size_t>(block_probabilities.rows()); }
  std::size_t right_blocks() const { return static_cast<std::size_t>(block_probabilities.cols()); }

  // Square block matrix with p_in on the diagonal and p_out elsewhere.
  static ScbmSpec planted(std::size_t m, std::size_t n, std::size_t blocks, double p_in, double p_out,
                          std::uint64_t seed);
};

struct ScbmInstance {
  SparseMatrix adjacency;  // m x n, entries 1
  std::vector<std::size_t> left_labels;
  std::vector<std::size_t> right_labels;
};

// Equal partition of `total` nodes; the last block takes the remainder.
std::vector<std::size_t> block_sizes(std::size_t total, std::size_t blocks);

// Throws InvalidProbability for probabilities outside [0, 1].
ScbmInstance generate(const ScbmSpec& spec);

// Maximum-weight perfect matching on a square matrix (Hungarian method).
// Returns the column assigned to each row.
std::vector<std::size_t> max_weight_assignment(const Eigen::MatrixXd& weights);

// Best fraction of matching labels over all relabelings of `predicted`.
double recovery_score(std::span<const std::size_t> predicted, std::span<const std::size_t> planted);

struct ScbmRecovery {
  double word_recovery = 0.0;
  double sentence_recovery = 0.0;
  std::vector<double> singular_values;  // leading values of the regularized Laplacian
  std::size_t largest_gap_after = 0;    // 1-based: gap between values [i-1] and [i]
  std::vector<std::size_t> word_labels;
  std::vector<std::size_t> sentence_labels;
};

// Regularized Laplacian with default taus, k leading singular vectors, row
// normalization and KMeans on each side.
ScbmRecovery recover_blocks(const ScbmInstance& instance, std::size_t k, std::uint64_t seed,
                            std::size_t spectrum_size = 10);

}  // namespace specseg
