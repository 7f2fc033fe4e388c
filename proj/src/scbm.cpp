#include "specseg/scbm.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "specseg/clustering.hpp"
#include "specseg/error.hpp"
#include "specseg/rng.hpp"
#include "specseg/spectral.hpp"

namespace specseg {

ScbmSpec ScbmSpec::planted(std::size_t m, std::size_t n, std::size_t blocks, double p_in, double p_out,
                           std::uint64_t seed) {
  ScbmSpec spec;
  spec.m = m;
  spec.n = n;
  spec.seed = seed;
  const auto b = static_cast<Eigen::Index>(blocks);
  spec.block_probabilities = Eigen::MatrixXd::Constant(b, b, p_out);
  spec.block_probabilities.diagonal().setConstant(p_in);
  return spec;
}

std::vector<std::size_t> block_sizes(std::size_t total, std::size_t blocks) {
  if (blocks == 0 || blocks > total) {
    throw Error(ErrorCode::InvalidArgument,
                "cannot split " + std::to_string(total) + " nodes into " + std::to_string(blocks) + " blocks");
  }
  std::vector<std::size_t> sizes(blocks, total / blocks);
  sizes.back() += total % blocks;
  return sizes;
}

namespace {

std::vector<std::size_t> expand_labels(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> labels;
  for (std::size_t b = 0; b < sizes.size(); ++b) labels.insert(labels.end(), sizes[b], b);
  return labels;
}

}  // namespace

ScbmInstance generate(const ScbmSpec& spec) {
  const Eigen::MatrixXd& probs = spec.block_probabilities;
  if (probs.size() == 0) throw Error(ErrorCode::InvalidArgument, "block probability matrix is empty");
  for (Eigen::Index i = 0; i < probs.rows(); ++i) {
    for (Eigen::Index j = 0; j < probs.cols(); ++j) {
      if (!(probs(i, j) >= 0.0 && probs(i, j) <= 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "B(" + std::to_string(i) + ", " + std::to_string(j) +
                                                       ") = " + std::to_string(probs(i, j)));
      }
    }
  }

  ScbmInstance inst;
  inst.left_labels = expand_labels(block_sizes(spec.m, spec.left_blocks()));
  inst.right_labels = expand_labels(block_sizes(spec.n, spec.right_blocks()));

  Rng rng(spec.seed);
  std::vector<Triplet> edges;
  for (std::size_t u = 0; u < spec.m; ++u) {
    for (std::size_t v = 0; v < spec.n; ++v) {
      const double p = probs(static_cast<Eigen::Index>(inst.left_labels[u]),
                             static_cast<Eigen::Index>(inst.right_labels[v]));
      if (rng.uniform() < p) edges.push_back({u, v, 1.0});
    }
  }
  inst.adjacency = SparseMatrix::from_triplets(spec.m, spec.n, edges);
  return inst;
}

std::vector<std::size_t> max_weight_assignment(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols()) throw Error(ErrorCode::DimensionError, "assignment matrix must be square");
  const auto n = static_cast<std::size_t>(weights.rows());
  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](std::size_t i, std::size_t j) {
    return -weights(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
  };

  // Shortest augmenting paths with potentials; 1-based with a dummy column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

double recovery_score(std::span<const std::size_t> predicted, std::span<const std::size_t> planted) {
  if (predicted.size() != planted.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(predicted.size()) + " predicted labels vs " +
                                               std::to_string(planted.size()) + " planted");
  }
  if (predicted.empty()) return 1.0;
  const std::size_t size = 1 + std::max(*std::max_element(predicted.begin(), predicted.end()),
                                        *std::max_element(planted.begin(), planted.end()));
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    confusion(static_cast<Eigen::Index>(predicted[i]), static_cast<Eigen::Index>(planted[i])) += 1.0;
  }
  const std::vector<std::size_t> assignment = max_weight_assignment(confusion);
  double matched = 0.0;
  for (std::size_t r = 0; r < size; ++r) {
    matched += confusion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(assignment[r]));
  }
  return matched / static_cast<double>(predicted.size());
}

ScbmRecovery recover_blocks(const ScbmInstance& instance, std::size_t k, std::uint64_t seed,
                            std::size_t spectrum_size) {
  const SparseMatrix& x = instance.adjacency;
  const Regularization tau = default_taus(degree_diagonals(x));
  const RegularizedLaplacian l = regularized_laplacian(x, tau.tau_p, tau.tau_o);

  SvdOptions svd_options;
  svd_options.seed = seed;
  const SpectralEmbedding embedding = normalize_rows(truncated_svd(l, k, svd_options));

  KMeansOptions km;
  km.seed = seed;
  ScbmRecovery out;
  out.word_labels = kmeans(embedding.words, k, km).labels;
  out.sentence_labels = kmeans(embedding.sentences, k, km).labels;
  out.word_recovery = recovery_score(out.word_labels, instance.right_labels);
  out.sentence_recovery = recovery_score(out.sentence_labels, instance.left_labels);

  const std::size_t r = std::min({spectrum_size, x.rows(), x.cols()});
  out.singular_values = truncated_svd(l, r, svd_options).singular_values;
  double widest = -1.0;
  for (std::size_t i = 1; i < out.singular_values.size(); ++i) {
    const double gap = out.singular_values[i - 1] - out.singular_values[i];
    if (gap > widest) {
      widest = gap;
      out.largest_gap_after = i;
    }
  }
  return out;
}

}  // namespace specseg
