#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "specseg/sparse_matrix.hpp"

namespace specseg {

struct DegreeDiagonals {
  std::vector<double> row_degrees;  // O_i, sentence degrees
  std::vector<double> col_degrees;  // P_j, word degrees
};

struct Regularization {
  double tau_p = 0.0;  // added to word degrees
  double tau_o = 0.0;  // added to sentence degrees
};

struct RegularizedLaplacian {
  SparseMatrix matrix;
  double tau_p = 0.0;
  double tau_o = 0.0;
};

struct SvdOptions {
  double tolerance = 1e-10;
  std::size_t iterations_per_vector = 1000;
  std::uint64_t seed = 0;
};

// Rows of `sentences` and `words` are the leading left and right singular
// vectors; after normalize_rows every non-degenerate row has unit length.
struct SpectralEmbedding {
  Eigen::MatrixXd sentences;
  Eigen::MatrixXd words;
  std::vector<double> singular_values;  // non-increasing
  std::vector<double> residuals;        // max(|L v - s u|, |L^T u - s v|) per pair
  std::vector<bool> degenerate_sentences;
  std::vector<bool> degenerate_words;
  std::size_t lanczos_steps = 0;
};

DegreeDiagonals degree_diagonals(const SparseMatrix& x);

// Average sentence and word degree.
Regularization default_taus(const DegreeDiagonals& degrees);

// L_ij = X_ij / sqrt((O_i + tau_o)(P_j + tau_p)). Throws SingularScaling when
// a zero row or column meets a zero tau.
RegularizedLaplacian regularized_laplacian(SparseMatrix x, double tau_p, double tau_o);

// k leading singular triplets by Golub-Kahan-Lanczos bidiagonalization with
// full reorthogonalization. Each pair is sign-fixed so the largest-magnitude
// entry of the word vector is positive. Throws KTooLarge if k > min(m, n) and
// ConvergenceFailure when the residuals stay above tolerance.
SpectralEmbedding truncated_svd(const SparseMatrix& l, std::size_t k, const SvdOptions& options = {});
SpectralEmbedding truncated_svd(const RegularizedLaplacian& l, std::size_t k, const SvdOptions& options = {});

inline constexpr double kDegenerateRowNorm = 1e-12;

// Scales each row to unit length; rows with norm below kDegenerateRowNorm are
// zeroed and flagged.
Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& rows, std::vector<bool>& degenerate);
SpectralEmbedding normalize_rows(SpectralEmbedding embedding);

}  // namespace specseg
