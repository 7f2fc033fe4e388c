#include "specseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specseg/error.hpp"

namespace specseg {

ReferenceCorpus::ReferenceCorpus(std::vector<WordSet> documents) : documents_(std::move(documents)) {
  if (documents_.empty()) throw Error(ErrorCode::InvalidArgument, "reference corpus has no documents");
  for (std::size_t d = 0; d < documents_.size(); ++d) {
    for (const std::string& w : documents_[d]) postings_[w].push_back(d);
  }
}

ReferenceCorpus ReferenceCorpus::from_token_lists(std::span<const std::vector<std::string>> documents) {
  std::vector<WordSet> sets;
  sets.reserve(documents.size());
  for (const auto& tokens : documents) sets.emplace_back(tokens.begin(), tokens.end());
  return ReferenceCorpus(std::move(sets));
}

std::size_t ReferenceCorpus::document_frequency(const std::string& word) const {
  auto it = postings_.find(word);
  return it == postings_.end() ? 0 : it->second.size();
}

std::size_t ReferenceCorpus::joint_frequency(const std::string& a, const std::string& b) const {
  auto ia = postings_.find(a);
  auto ib = postings_.find(b);
  if (ia == postings_.end() || ib == postings_.end()) return 0;
  if (a == b) return ia->second.size();
  const auto& pa = ia->second;
  const auto& pb = ib->second;
  std::size_t i = 0, j = 0, both = 0;
  while (i < pa.size() && j < pb.size()) {
    if (pa[i] < pb[j]) {
      ++i;
    } else if (pb[j] < pa[i]) {
      ++j;
    } else {
      ++both;
      ++i;
      ++j;
    }
  }
  return both;
}

namespace {

void require_pairs(std::span<const std::string> topic) {
  if (topic.size() < 2) throw Error(ErrorCode::DegenerateTopic, "a topic needs at least two words to score");
}

double probability(std::size_t count, const ReferenceCorpus& corpus) {
  return static_cast<double>(count) / static_cast<double>(corpus.count());
}

double marginal(const std::string& word, const ReferenceCorpus& corpus) {
  const double p = probability(corpus.document_frequency(word), corpus);
  if (p == 0.0) throw Error(ErrorCode::UndefinedProbability, "'" + word + "' does not occur in the reference corpus");
  return p;
}

void require_square(std::span<const double> per_topic, const Eigen::MatrixXd& sim) {
  const auto k = static_cast<Eigen::Index>(per_topic.size());
  if (k == 0 || sim.rows() != k || sim.cols() != k) {
    throw Error(ErrorCode::DimensionError, "similarity matrix must be k x k for k = " + std::to_string(k));
  }
}

}  // namespace

double pmi(std::span<const std::string> topic, const ReferenceCorpus& corpus) {
  require_pairs(topic);
  const double epsilon = 1.0 / (10.0 * static_cast<double>(corpus.count()));
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t j = 1; j < topic.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double pi = marginal(topic[i], corpus);
      const double pj = marginal(topic[j], corpus);
      double joint = probability(corpus.joint_frequency(topic[i], topic[j]), corpus);
      if (joint == 0.0) joint = epsilon;
      total += std::log(joint / (pi * pj));
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

double umass(std::span<const std::string> topic, const ReferenceCorpus& corpus) {
  require_pairs(topic);
  double total = 0.0;
  for (std::size_t j = 1; j < topic.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double pi = marginal(topic[i], corpus);
      const double joint = probability(corpus.joint_frequency(topic[i], topic[j]), corpus);
      total += std::log((joint + 1.0) / pi);
    }
  }
  return total;
}

double jaccard(const WordSet& a, const WordSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyTopic, "similarity of an empty topic");
  const std::size_t both = static_cast<std::size_t>(
      std::count_if(a.begin(), a.end(), [&](const std::string& w) { return b.contains(w); }));
  return static_cast<double>(both) / static_cast<double>(a.size() + b.size() - both);
}

double dice(const WordSet& a, const WordSet& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyTopic, "similarity of an empty topic");
  const std::size_t both = static_cast<std::size_t>(
      std::count_if(a.begin(), a.end(), [&](const std::string& w) { return b.contains(w); }));
  return 2.0 * static_cast<double>(both) / static_cast<double>(a.size() + b.size());
}

Eigen::MatrixXd similarity_matrix(std::span<const WordSet> topics, Similarity kind) {
  const auto k = static_cast<Eigen::Index>(topics.size());
  Eigen::MatrixXd sim = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const auto& a = topics[static_cast<std::size_t>(i)];
      const auto& b = topics[static_cast<std::size_t>(j)];
      sim(i, j) = sim(j, i) = kind == Similarity::Jaccard ? jaccard(a, b) : dice(a, b);
    }
  }
  return sim;
}

double composite_pmi(std::span<const double> per_topic, const Eigen::MatrixXd& sim) {
  require_square(per_topic, sim);
  const std::size_t k = per_topic.size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double sum = per_topic[i] + per_topic[j];
      const double sign = sum >= 0.0 ? 1.0 : -1.0;
      total += sum * (1.0 - sign * sim(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) / 2.0;
    }
  }
  return total / static_cast<double>(k * k);
}

double composite_umass(std::span<const double> per_topic, const Eigen::MatrixXd& sim) {
  require_square(per_topic, sim);
  const std::size_t k = per_topic.size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      total += (per_topic[i] + per_topic[j]) * (1.0 + sim(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) / 2.0;
    }
  }
  return total / static_cast<double>(k * k);
}

// ---------------------------------------------------------------------------
// Segmentation metrics

std::size_t default_window(std::size_t units, std::size_t reference_segments) {
  const double half_mean = static_cast<double>(units) / (2.0 * static_cast<double>(reference_segments));
  const auto rounded = static_cast<long long>(std::llround(half_mean));
  return static_cast<std::size_t>(std::max(1LL, rounded - 1));
}

namespace {

struct UnitSegments {
  std::vector<std::size_t> ref;
  std::vector<std::size_t> hyp;
  std::size_t window = 1;
};

UnitSegments expand(const Segmentation& ref, const Segmentation& hyp, std::span<const std::size_t> unit_lengths,
                    std::optional<std::size_t> window) {
  if (ref.sentence_count != hyp.sentence_count || ref.sentence_count != unit_lengths.size()) {
    throw Error(ErrorCode::LengthMismatch, "reference covers " + std::to_string(ref.sentence_count) +
                                               " sentences, hypothesis " + std::to_string(hyp.sentence_count) +
                                               ", unit lengths " + std::to_string(unit_lengths.size()));
  }
  ref.validate();
  hyp.validate();
  const std::vector<std::size_t> ref_labels = ref.labels();
  const std::vector<std::size_t> hyp_labels = hyp.labels();
  UnitSegments out;
  for (std::size_t s = 0; s < unit_lengths.size(); ++s) {
    out.ref.insert(out.ref.end(), unit_lengths[s], ref_labels[s]);
    out.hyp.insert(out.hyp.end(), unit_lengths[s], hyp_labels[s]);
  }
  const std::size_t n = out.ref.size();
  out.window = window.value_or(default_window(n, ref.k()));
  if (out.window == 0) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  if (n <= out.window) {
    throw Error(ErrorCode::InvalidArgument, "sequence of " + std::to_string(n) + " units has no window of size " +
                                                std::to_string(out.window));
  }
  return out;
}

}  // namespace

double p_k(const Segmentation& ref, const Segmentation& hyp, std::span<const std::size_t> unit_lengths,
           std::optional<std::size_t> window) {
  const UnitSegments u = expand(ref, hyp, unit_lengths, window);
  const std::size_t windows = u.ref.size() - u.window;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < windows; ++i) {
    const bool same_ref = u.ref[i] == u.ref[i + u.window];
    const bool same_hyp = u.hyp[i] == u.hyp[i + u.window];
    errors += same_ref != same_hyp ? 1 : 0;
  }
  return static_cast<double>(errors) / static_cast<double>(windows);
}

double window_diff(const Segmentation& ref, const Segmentation& hyp, std::span<const std::size_t> unit_lengths,
                   std::optional<std::size_t> window) {
  const UnitSegments u = expand(ref, hyp, unit_lengths, window);
  const std::size_t windows = u.ref.size() - u.window;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < windows; ++i) {
    // Segment ids increase by one per boundary.
    const std::size_t b_ref = u.ref[i + u.window] - u.ref[i];
    const std::size_t b_hyp = u.hyp[i + u.window] - u.hyp[i];
    errors += b_ref != b_hyp ? 1 : 0;
  }
  return static_cast<double>(errors) / static_cast<double>(windows);
}

SegEval evaluate_segmentation(const Segmentation& ref, const Segmentation& hyp,
                              std::span<const std::size_t> unit_lengths, std::optional<std::size_t> window) {
  SegEval e;
  e.units = std::accumulate(unit_lengths.begin(), unit_lengths.end(), std::size_t{0});
  e.window = window.value_or(default_window(e.units, ref.k()));
  e.p_k = p_k(ref, hyp, unit_lengths, e.window);
  e.window_diff = window_diff(ref, hyp, unit_lengths, e.window);
  return e;
}

}  // namespace specseg
