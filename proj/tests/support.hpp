#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specseg/rng.hpp"
#include "specseg/sparse_matrix.hpp"

namespace testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture(const std::string& name) { return read_text(std::string(SPECSEG_FIXTURE_DIR) + "/" + name); }

// Non-comment, non-blank lines.
inline std::vector<std::string> fixture_lines(const std::string& name) {
  std::istringstream in(fixture(name));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

inline Eigen::MatrixXd dense(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline specseg::SparseMatrix sparse(std::initializer_list<std::initializer_list<double>> rows) {
  return specseg::SparseMatrix::from_dense(dense(rows));
}

// Random non-negative matrix with roughly `density` of the entries set.
inline Eigen::MatrixXd random_nonnegative(specseg::Rng& rng, std::size_t rows, std::size_t cols, double density,
                                          double max_value = 5.0) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (rng.uniform() < density) m(i, j) = rng.uniform(0.1, max_value);
    }
  }
  return m;
}

inline Eigen::MatrixXd random_points(specseg::Rng& rng, std::size_t n, std::size_t dims) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dims));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.normal();
  }
  return m;
}

}  // namespace testing
