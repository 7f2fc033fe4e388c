#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specseg/clustering.hpp"
#include "specseg/metrics.hpp"
#include "specseg/pos_tagger.hpp"
#include "specseg/segmentation.hpp"
#include "specseg/text_prep.hpp"

namespace specseg {

struct AnalysisOptions {
  std::size_t k = 0;
  double lambda = 1.0;
  std::size_t window = 5;
  double decay = 0.7;
  std::optional<double> tau_p;  // default: average word degree
  std::optional<double> tau_o;  // default: average sentence degree
  std::uint64_t seed = 0;
  std::optional<WordSet> stopwords;  // default: bundled list
  const Tagger* tagger = nullptr;    // default: LexiconTagger
};

struct ResolvedParameters {
  std::size_t k = 0;
  double lambda = 0.0;
  std::size_t window = 0;
  double decay = 0.0;
  double tau_p = 0.0;
  double tau_o = 0.0;
  std::uint64_t seed = 0;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0.0;
};

struct AnalysisResult {
  TopicSet topics;
  Segmentation segments;         // over all sentences of the document
  Segmentation matrix_segments;  // over the matrix rows only
  ResolvedParameters parameters;
  std::vector<StageTiming> timing;
  double total_milliseconds = 0.0;

  std::vector<std::vector<std::string>> sentence_tokens;  // every sentence, in order
  std::vector<std::size_t> matrix_rows;                   // source sentence of each matrix row
  std::size_t vocabulary_size = 0;
  std::vector<double> singular_values;
};

// Sentence splitting and tokenization only, as used by analyze.
std::vector<std::vector<std::string>> document_tokens(std::string_view text);

// Degree-one filtering, counts and POS indicator, awarding, tf-idf, bonding,
// regularized Laplacian, truncated SVD, row normalization, KMeans topics and
// constrained agglomerative segments. Errors carry the failing stage.
AnalysisResult analyze(std::string_view text, const AnalysisOptions& options);

struct EvaluationOptions {
  std::size_t top_k = 10;
  bool sentence_units = false;
  std::optional<ReferenceCorpus> corpus;  // PMI corpus; default: the document's sentences
  std::optional<std::size_t> window;
};

struct EvaluationReport {
  std::vector<std::optional<double>> pmi;  // empty when a topic has fewer than two words
  std::vector<std::optional<double>> umass;
  Eigen::MatrixXd jaccard;
  Eigen::MatrixXd dice;
  std::optional<double> mean_pmi;
  std::optional<double> mean_umass;
  std::optional<double> pmi_jaccard;
  std::optional<double> pmi_dice;
  std::optional<double> umass_jaccard;
  std::optional<double> umass_dice;
  SegEval segmentation;
  bool sentence_units = false;
  bool external_corpus = false;
  std::vector<std::string> warnings;
};

// topics: ranked word lists; sentence_tokens: every sentence of the document.
EvaluationReport evaluate(std::span<const std::vector<std::string>> topics, const Segmentation& hypothesis,
                          const Segmentation& reference, std::span<const std::vector<std::string>> sentence_tokens,
                          const EvaluationOptions& options);

}  // namespace specseg
