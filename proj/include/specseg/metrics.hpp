#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "specseg/segmentation.hpp"
#include "specseg/text_prep.hpp"

namespace specseg {

// Documents as word sets; probabilities are document-frequency fractions.
class ReferenceCorpus {
 public:
  explicit ReferenceCorpus(std::vector<WordSet> documents);

  static ReferenceCorpus from_token_lists(std::span<const std::vector<std::string>> documents);

  std::size_t count() const { return documents_.size(); }
  std::size_t document_frequency(const std::string& word) const;
  std::size_t joint_frequency(const std::string& a, const std::string& b) const;

 private:
  std::vector<WordSet> documents_;
  std::unordered_map<std::string, std::vector<std::size_t>> postings_;
};

// Mean pairwise log(p(a, b) / (p(a) p(b))) over the listed words. A zero joint
// probability is replaced by 1 / (10 * corpus size).
double pmi(std::span<const std::string> topic, const ReferenceCorpus& corpus);

// Sum over j > i of log((p(w_i, w_j) + 1) / p(w_i)); order matters.
double umass(std::span<const std::string> topic, const ReferenceCorpus& corpus);

double jaccard(const WordSet& a, const WordSet& b);
double dice(const WordSet& a, const WordSet& b);

enum class Similarity { Jaccard, Dice };

// k x k pairwise similarities with the diagonal held at zero.
Eigen::MatrixXd similarity_matrix(std::span<const WordSet> topics, Similarity kind);

// Coherence averaged over all ordered topic pairs, each pair discounted by
// its similarity. Reduces to the plain mean when all similarities are zero.
double composite_pmi(std::span<const double> per_topic, const Eigen::MatrixXd& sim);
double composite_umass(std::span<const double> per_topic, const Eigen::MatrixXd& sim);

struct SegEval {
  double p_k = 0.0;
  double window_diff = 0.0;
  std::size_t window = 1;
  std::size_t units = 0;  // N
};

// One less than half the average reference segment length, at least 1.
std::size_t default_window(std::size_t units, std::size_t reference_segments);

// Both segmentations are over the same sentences; unit_lengths[i] is the
// number of units (words, or 1 for sentence-level scoring) sentence i spans.
double p_k(const Segmentation& ref, const Segmentation& hyp, std::span<const std::size_t> unit_lengths,
           std::optional<std::size_t> window = std::nullopt);
double window_diff(const Segmentation& ref, const Segmentation& hyp, std::span<const std::size_t> unit_lengths,
                   std::optional<std::size_t> window = std::nullopt);
SegEval evaluate_segmentation(const Segmentation& ref, const Segmentation& hyp,
                              std::span<const std::size_t> unit_lengths,
                              std::optional<std::size_t> window = std::nullopt);

}  // namespace specseg
