#pragma once

#include <span>
#include <vector>

#include "specseg/pos_tagger.hpp"
#include "specseg/sparse_matrix.hpp"
#include "specseg/text_prep.hpp"

namespace specseg {

// Occurrence counts of vocabulary word j in sentence row i.
struct CountMatrix {
  SparseMatrix matrix;
};

// 1 where the word occurs in the sentence with a noun or verb tag.
struct PosIndicator {
  SparseMatrix matrix;
};

struct TfIdfMatrix {
  SparseMatrix matrix;
};

// Rows are Sentence::index, which must be a permutation of 0..m-1. Tokens
// outside the vocabulary are ignored.
CountMatrix build_counts(std::span<const Sentence> sentences, const Vocabulary& vocab);

// tags[r] must align with sentences[r].tokens; throws AlignmentError otherwise.
PosIndicator build_pos_indicator(const CountMatrix& counts, std::span<const Sentence> sentences,
                                 std::span<const std::vector<PosTag>> tags, const Vocabulary& vocab);

// counts + lambda * indicator.
SparseMatrix award(const CountMatrix& counts, const PosIndicator& indicator, double lambda);

// Row i becomes sum over l in [i-w, i+w] of decay^|l-i| * row l, rows outside
// the matrix contributing nothing. decay^0 is 1 even for decay = 0.
SparseMatrix bond(const SparseMatrix& awarded, std::size_t window, double decay);

// weight * (ln((1 + m) / (1 + df)) + 1), df counted over rows.
TfIdfMatrix tfidf(const SparseMatrix& awarded);

// Column sums.
std::vector<double> word_scores(const TfIdfMatrix& f);

}  // namespace specseg
