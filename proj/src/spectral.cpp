#include "specseg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/SVD>

#include "specseg/error.hpp"
#include "specseg/rng.hpp"

namespace specseg {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(Vec& x, double s) {
  for (double& v : x) v *= s;
}

// Two passes of classical Gram-Schmidt against an orthonormal basis.
void orthogonalize(Vec& x, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& b : basis) axpy(-dot(x, b), b, x);
  }
}

// Random unit vector orthogonal to basis. Fails only if basis spans the space.
bool random_orthogonal(Vec& out, const std::vector<Vec>& basis, Rng& rng) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    for (double& v : out) v = rng.uniform(-1.0, 1.0);
    orthogonalize(out, basis);
    const double nrm = norm(out);
    if (nrm > 1e-8) {
      scale(out, 1.0 / nrm);
      return true;
    }
  }
  return false;
}

// The operator the bidiagonalization runs on: A or A^T, oriented so that
// cols() <= rows(). Exhausting the column space then ends the recurrence
// with an exact factorization.
class Operator {
 public:
  explicit Operator(const SparseMatrix& a) : a_(a), transposed_(a.rows() < a.cols()) {}

  std::size_t rows() const { return transposed_ ? a_.cols() : a_.rows(); }
  std::size_t cols() const { return transposed_ ? a_.rows() : a_.cols(); }
  bool transposed() const { return transposed_; }

  void apply(const Vec& x, Vec& y) const {
    if (transposed_) {
      a_.multiply_transpose(x, y);
    } else {
      a_.multiply(x, y);
    }
  }
  void apply_transpose(const Vec& x, Vec& y) const {
    if (transposed_) {
      a_.multiply(x, y);
    } else {
      a_.multiply_transpose(x, y);
    }
  }

 private:
  const SparseMatrix& a_;
  bool transposed_;
};

struct Bidiagonalization {
  std::vector<Vec> u;  // left Lanczos vectors, length rows()
  std::vector<Vec> v;  // right Lanczos vectors, length cols()
  Vec alpha;
  Vec beta;           // beta[j] couples v[j+1] to u[j]
  Vec next_v;         // v_{p+1}, empty once the column space is exhausted
  bool complete = false;
};

class Lanczos {
 public:
  Lanczos(const Operator& op, std::uint64_t seed) : op_(op), rng_(seed) {
    Vec v(op_.cols());
    random_orthogonal(v, {}, rng_);
    state_.next_v = std::move(v);
  }

  const Bidiagonalization& state() const { return state_; }

  void extend_to(std::size_t steps) {
    while (state_.v.size() < steps && !state_.complete) step();
  }

 private:
  void step() {
    const std::size_t j = state_.v.size();
    state_.v.push_back(std::move(state_.next_v));
    state_.next_v.clear();
    const Vec& vj = state_.v.back();

    Vec u(op_.rows());
    op_.apply(vj, u);
    if (j > 0) axpy(-state_.beta[j - 1], state_.u[j - 1], u);
    orthogonalize(u, state_.u);
    double alpha = norm(u);
    scale_reference_ = std::max(scale_reference_, alpha);
    if (alpha <= breakdown_threshold()) {
      alpha = 0.0;
      random_orthogonal(u, state_.u, rng_);
    } else {
      scale(u, 1.0 / alpha);
    }
    state_.alpha.push_back(alpha);
    state_.u.push_back(std::move(u));

    if (state_.v.size() == op_.cols()) {
      state_.beta.push_back(0.0);
      state_.complete = true;
      return;
    }

    Vec v(op_.cols());
    op_.apply_transpose(state_.u.back(), v);
    axpy(-alpha, state_.v.back(), v);
    orthogonalize(v, state_.v);
    double beta = norm(v);
    scale_reference_ = std::max(scale_reference_, beta);
    if (beta <= breakdown_threshold()) {
      beta = 0.0;
      if (!random_orthogonal(v, state_.v, rng_)) {
        state_.beta.push_back(0.0);
        state_.complete = true;
        return;
      }
    } else {
      scale(v, 1.0 / beta);
    }
    state_.beta.push_back(beta);
    state_.next_v = std::move(v);
  }

  double breakdown_threshold() const { return 1e-13 * std::max(1.0, scale_reference_); }

  const Operator& op_;
  Rng rng_;
  Bidiagonalization state_;
  double scale_reference_ = 0.0;
};

struct Triplets {
  Vec values;
  std::vector<Vec> left;   // operator-space left vectors
  std::vector<Vec> right;  // operator-space right vectors
  Vec residuals;
};

Triplets ritz_triplets(const Operator& op, const Bidiagonalization& bd, std::size_t k) {
  const auto p = static_cast<Eigen::Index>(bd.v.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    b(j, j) = bd.alpha[static_cast<std::size_t>(j)];
    if (j + 1 < p) b(j, j + 1) = bd.beta[static_cast<std::size_t>(j)];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);

  Triplets t;
  for (std::size_t i = 0; i < k; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const double sigma = svd.singularValues()(col);
    Vec left(op.rows(), 0.0);
    Vec right(op.cols(), 0.0);
    for (Eigen::Index j = 0; j < p; ++j) {
      axpy(svd.matrixU()(j, col), bd.u[static_cast<std::size_t>(j)], left);
      axpy(svd.matrixV()(j, col), bd.v[static_cast<std::size_t>(j)], right);
    }
    Vec av(op.rows());
    Vec atu(op.cols());
    op.apply(right, av);
    op.apply_transpose(left, atu);
    axpy(-sigma, left, av);
    axpy(-sigma, right, atu);
    t.values.push_back(sigma);
    t.residuals.push_back(std::max(norm(av), norm(atu)));
    t.left.push_back(std::move(left));
    t.right.push_back(std::move(right));
  }
  return t;
}

}  // namespace

DegreeDiagonals degree_diagonals(const SparseMatrix& x) {
  DegreeDiagonals d{Vec(x.rows(), 0.0), Vec(x.cols(), 0.0)};
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto cols = x.row_cols(r);
    const auto vals = x.row_values(r);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      d.row_degrees[r] += vals[p];
      d.col_degrees[cols[p]] += vals[p];
    }
  }
  return d;
}

Regularization default_taus(const DegreeDiagonals& degrees) {
  Regularization tau;
  if (!degrees.col_degrees.empty()) {
    tau.tau_p = std::accumulate(degrees.col_degrees.begin(), degrees.col_degrees.end(), 0.0) /
                static_cast<double>(degrees.col_degrees.size());
  }
  if (!degrees.row_degrees.empty()) {
    tau.tau_o = std::accumulate(degrees.row_degrees.begin(), degrees.row_degrees.end(), 0.0) /
                static_cast<double>(degrees.row_degrees.size());
  }
  return tau;
}

RegularizedLaplacian regularized_laplacian(SparseMatrix x, double tau_p, double tau_o) {
  if (!(tau_p >= 0.0) || !(tau_o >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "regularization parameters must be non-negative");
  }
  const DegreeDiagonals d = degree_diagonals(x);
  Vec row_total(x.rows());
  Vec col_total(x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double s = d.row_degrees[i] + tau_o;
    if (!(s > 0.0)) throw Error(ErrorCode::SingularScaling, "sentence row " + std::to_string(i) + " has zero degree");
    row_total[i] = s;
  }
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double s = d.col_degrees[j] + tau_p;
    if (!(s > 0.0)) throw Error(ErrorCode::SingularScaling, "word column " + std::to_string(j) + " has zero degree");
    col_total[j] = s;
  }
  x.transform_values([&](std::size_t r, std::size_t c, double v) { return v / std::sqrt(row_total[r] * col_total[c]); });
  return {std::move(x), tau_p, tau_o};
}

SpectralEmbedding truncated_svd(const RegularizedLaplacian& l, std::size_t k, const SvdOptions& options) {
  return truncated_svd(l.matrix, k, options);
}

SpectralEmbedding truncated_svd(const SparseMatrix& l, std::size_t k, const SvdOptions& options) {
  const std::size_t min_dim = std::min(l.rows(), l.cols());
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (k > min_dim) {
    throw Error(ErrorCode::KTooLarge,
                "k = " + std::to_string(k) + " exceeds min(m, n) = " + std::to_string(min_dim));
  }

  const Operator op(l);
  Lanczos lanczos(op, options.seed);
  const std::size_t cap = std::min(op.cols(), options.iterations_per_vector * k);
  std::size_t target = std::min(cap, std::max<std::size_t>(2 * k + 10, 20));
  const std::size_t increment = std::max<std::size_t>(k, 10);

  Triplets t;
  while (true) {
    lanczos.extend_to(target);
    const Bidiagonalization& bd = lanczos.state();
    t = ritz_triplets(op, bd, k);
    const bool converged = std::all_of(t.residuals.begin(), t.residuals.end(),
                                       [&](double r) { return r <= options.tolerance; });
    if (converged) break;
    if (bd.complete || bd.v.size() >= cap) {
      const double worst = *std::max_element(t.residuals.begin(), t.residuals.end());
      throw Error(ErrorCode::ConvergenceFailure, "residual " + std::to_string(worst) + " after " +
                                                     std::to_string(bd.v.size()) + " Lanczos steps");
    }
    target = std::min(cap, target + increment);
  }

  SpectralEmbedding e;
  e.lanczos_steps = lanczos.state().v.size();
  e.singular_values = t.values;
  e.residuals = t.residuals;
  const auto m = static_cast<Eigen::Index>(l.rows());
  const auto n = static_cast<Eigen::Index>(l.cols());
  e.sentences.resize(m, static_cast<Eigen::Index>(k));
  e.words.resize(n, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const Vec& sent = op.transposed() ? t.right[i] : t.left[i];
    const Vec& word = op.transposed() ? t.left[i] : t.right[i];
    std::size_t arg = 0;
    for (std::size_t j = 1; j < word.size(); ++j) {
      if (std::abs(word[j]) > std::abs(word[arg])) arg = j;
    }
    const double sign = word[arg] < 0.0 ? -1.0 : 1.0;
    const auto col = static_cast<Eigen::Index>(i);
    for (Eigen::Index r = 0; r < m; ++r) e.sentences(r, col) = sign * sent[static_cast<std::size_t>(r)];
    for (Eigen::Index r = 0; r < n; ++r) e.words(r, col) = sign * word[static_cast<std::size_t>(r)];
  }
  return e;
}

Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& rows, std::vector<bool>& degenerate) {
  Eigen::MatrixXd out = rows;
  degenerate.assign(static_cast<std::size_t>(rows.rows()), false);
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const double nrm = rows.row(r).norm();
    if (nrm < kDegenerateRowNorm) {
      out.row(r).setZero();
      degenerate[static_cast<std::size_t>(r)] = true;
    } else {
      out.row(r) /= nrm;
    }
  }
  return out;
}

SpectralEmbedding normalize_rows(SpectralEmbedding embedding) {
  embedding.sentences = normalize_rows(embedding.sentences, embedding.degenerate_sentences);
  embedding.words = normalize_rows(embedding.words, embedding.degenerate_words);
  return embedding;
}

}  // namespace specseg
