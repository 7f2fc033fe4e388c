#include "specseg/doc_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "specseg/error.hpp"

namespace specseg {
namespace {

void require_same_shape(const SparseMatrix& a, const SparseMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionError, std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                                               std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                               std::to_string(b.cols()));
  }
}

SparseMatrix from_rows(std::size_t cols, const std::vector<std::vector<SparseEntry>>& by_row) {
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  row_ptr.reserve(by_row.size() + 1);
  for (const auto& row : by_row) {
    for (const SparseEntry& e : row) {
      col_idx.push_back(e.col);
      values.push_back(e.value);
    }
    row_ptr.push_back(col_idx.size());
  }
  return SparseMatrix::from_csr(by_row.size(), cols, std::move(row_ptr), std::move(col_idx), std::move(values));
}

}  // namespace

CountMatrix build_counts(std::span<const Sentence> sentences, const Vocabulary& vocab) {
  if (vocab.size() == 0) throw Error(ErrorCode::EmptyVocabulary, "vocabulary is empty");
  if (sentences.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two non-empty sentences");

  const std::size_t m = sentences.size();
  std::vector<bool> used(m, false);
  std::vector<std::vector<SparseEntry>> by_row(m);
  std::vector<double> acc(vocab.size(), 0.0);
  std::vector<std::size_t> support;
  for (const Sentence& s : sentences) {
    if (s.index >= m || used[s.index]) {
      throw Error(ErrorCode::DimensionError,
                  "sentence index " + std::to_string(s.index) + " is out of range or repeated for m = " +
                      std::to_string(m));
    }
    used[s.index] = true;
    for (const std::string& token : s.tokens) {
      if (auto it = vocab.index_of.find(token); it != vocab.index_of.end()) {
        if (acc[it->second] == 0.0) support.push_back(it->second);
        acc[it->second] += 1.0;
      }
    }
    std::sort(support.begin(), support.end());
    for (std::size_t c : support) {
      by_row[s.index].push_back({c, acc[c]});
      acc[c] = 0.0;
    }
    support.clear();
  }
  return {from_rows(vocab.size(), by_row)};
}

PosIndicator build_pos_indicator(const CountMatrix& counts, std::span<const Sentence> sentences,
                                 std::span<const std::vector<PosTag>> tags, const Vocabulary& vocab) {
  if (tags.size() != sentences.size()) {
    throw Error(ErrorCode::AlignmentError, std::to_string(tags.size()) + " tag lists for " +
                                               std::to_string(sentences.size()) + " sentences");
  }
  std::vector<std::vector<SparseEntry>> by_row(counts.matrix.rows());
  std::vector<std::size_t> marked;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const Sentence& sentence = sentences[s];
    if (tags[s].size() != sentence.tokens.size()) {
      throw Error(ErrorCode::AlignmentError, "sentence " + std::to_string(sentence.source_index) + " has " +
                                                 std::to_string(sentence.tokens.size()) + " tokens but " +
                                                 std::to_string(tags[s].size()) + " tags");
    }
    if (sentence.index >= counts.matrix.rows()) continue;
    marked.clear();
    for (std::size_t t = 0; t < sentence.tokens.size(); ++t) {
      if (!is_content(tags[s][t])) continue;
      auto it = vocab.index_of.find(sentence.tokens[t]);
      if (it == vocab.index_of.end()) continue;
      if (counts.matrix.at(sentence.index, it->second) == 0.0) continue;
      marked.push_back(it->second);
    }
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    for (std::size_t c : marked) by_row[sentence.index].push_back({c, 1.0});
  }
  return {from_rows(counts.matrix.cols(), by_row)};
}

SparseMatrix award(const CountMatrix& counts, const PosIndicator& indicator, double lambda) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "awarding value must be non-negative");
  require_same_shape(counts.matrix, indicator.matrix, "award");
  if (lambda == 0.0) return counts.matrix;
  const SparseMatrix& x = counts.matrix;
  const SparseMatrix& t = indicator.matrix;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  row_ptr.reserve(x.rows() + 1);
  col_idx.reserve(x.non_zeros() + t.non_zeros());
  values.reserve(col_idx.capacity());
  const auto emit = [&](std::size_t c, double v) {
    if (v == 0.0) return;
    col_idx.push_back(c);
    values.push_back(v);
  };
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto xc = x.row_cols(r);
    const auto xv = x.row_values(r);
    const auto tc = t.row_cols(r);
    const auto tv = t.row_values(r);
    std::size_t a = 0, b = 0;
    while (a < xc.size() || b < tc.size()) {
      if (b == tc.size() || (a < xc.size() && xc[a] < tc[b])) {
        emit(xc[a], xv[a]);
        ++a;
      } else if (a == xc.size() || tc[b] < xc[a]) {
        emit(tc[b], lambda * tv[b]);
        ++b;
      } else {
        emit(xc[a], xv[a] + lambda * tv[b]);
        ++a;
        ++b;
      }
    }
    row_ptr.push_back(col_idx.size());
  }
  return SparseMatrix::from_csr(x.rows(), x.cols(), std::move(row_ptr), std::move(col_idx), std::move(values));
}

SparseMatrix bond(const SparseMatrix& awarded, std::size_t window, double decay) {
  if (!(decay >= 0.0 && decay <= 1.0)) throw Error(ErrorCode::InvalidArgument, "decay must lie in [0, 1]");
  if (window == 0) return awarded;

  const std::size_t m = awarded.rows();
  std::vector<double> weight(window + 1);
  for (std::size_t dist = 0; dist <= window; ++dist) weight[dist] = std::pow(decay, static_cast<double>(dist));

  // Slide a window of rows i-w..i+w, keeping the sorted union of their columns.
  const std::size_t n = awarded.cols();
  std::vector<double> acc(n, 0.0);
  std::vector<std::size_t> in_window(n, 0);
  std::vector<std::size_t> active, merged;
  const auto enter = [&](std::size_t l) {
    const auto cols = awarded.row_cols(l);
    merged.clear();
    auto it = active.begin();
    for (std::size_t c : cols) {
      if (in_window[c]++ > 0) continue;
      while (it != active.end() && *it < c) merged.push_back(*it++);
      merged.push_back(c);
    }
    merged.insert(merged.end(), it, active.end());
    active.swap(merged);
  };
  const auto leave = [&](std::size_t l) {
    bool emptied = false;
    for (std::size_t c : awarded.row_cols(l)) emptied |= --in_window[c] == 0;
    if (emptied) std::erase_if(active, [&](std::size_t c) { return in_window[c] == 0; });
  };

  const auto slide = [&](std::size_t i) {
    if (i == 0) {
      active.clear();
      for (std::size_t l = 0; l < std::min(m, window); ++l) enter(l);
    }
    if (i + window < m) enter(i + window);
    if (i > window) leave(i - window - 1);
  };

  // First pass sizes the output so it is allocated once.
  std::size_t bound = 0;
  for (std::size_t i = 0; i < m; ++i) {
    slide(i);
    bound += active.size();
  }
  std::fill(in_window.begin(), in_window.end(), 0);

  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  row_ptr.reserve(m + 1);
  col_idx.reserve(bound);
  values.reserve(bound);
  for (std::size_t i = 0; i < m; ++i) {
    slide(i);
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(m - 1, i + window);
    for (std::size_t l = lo; l <= hi; ++l) {
      const double wgt = weight[l > i ? l - i : i - l];
      if (wgt == 0.0) continue;
      const auto cols = awarded.row_cols(l);
      const auto vals = awarded.row_values(l);
      for (std::size_t p = 0; p < cols.size(); ++p) acc[cols[p]] += wgt * vals[p];
    }
    for (std::size_t c : active) {
      if (acc[c] != 0.0) {
        col_idx.push_back(c);
        values.push_back(acc[c]);
      }
      acc[c] = 0.0;
    }
    row_ptr.push_back(col_idx.size());
  }
  return SparseMatrix::from_csr(m, n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

TfIdfMatrix tfidf(const SparseMatrix& awarded) {
  if (awarded.rows() == 0 || awarded.cols() == 0) throw Error(ErrorCode::DimensionError, "empty matrix");
  std::vector<double> df(awarded.cols(), 0.0);
  for (std::size_t r = 0; r < awarded.rows(); ++r) {
    for (std::size_t c : awarded.row_cols(r)) df[c] += 1.0;
  }
  const double m = static_cast<double>(awarded.rows());
  std::vector<double> idf(awarded.cols());
  for (std::size_t c = 0; c < idf.size(); ++c) idf[c] = std::log((1.0 + m) / (1.0 + df[c])) + 1.0;
  return {awarded.map_values([&](std::size_t, std::size_t c, double v) { return v * idf[c]; })};
}

std::vector<double> word_scores(const TfIdfMatrix& f) {
  std::vector<double> scores(f.matrix.cols(), 0.0);
  for (std::size_t r = 0; r < f.matrix.rows(); ++r) {
    const auto cols = f.matrix.row_cols(r);
    const auto vals = f.matrix.row_values(r);
    for (std::size_t p = 0; p < cols.size(); ++p) scores[cols[p]] += vals[p];
  }
  return scores;
}

}  // namespace specseg
