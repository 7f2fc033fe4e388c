#include "specseg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <type_traits>
#include <utility>

#include "specseg/doc_matrix.hpp"
#include "specseg/error.hpp"
#include "specseg/spectral.hpp"

namespace specseg {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Runs one pipeline stage, recording its duration and prefixing errors with
// the stage name.
template <typename F>
auto run_stage(const char* name, std::vector<StageTiming>& timing, F&& f) {
  const auto start = Clock::now();
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timing.push_back({name, elapsed_ms(start)});
    } else {
      auto value = f();
      timing.push_back({name, elapsed_ms(start)});
      return value;
    }
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.detail());
  }
}

// Maps a segmentation over matrix rows back onto all sentences. Sentences
// without a row join the segment of the preceding row.
Segmentation to_source_sentences(const Segmentation& rows, std::span<const std::size_t> source, std::size_t total) {
  Segmentation out;
  out.sentence_count = total;
  for (std::size_t b : rows.boundaries) out.boundaries.push_back(source[b + 1] - 1);
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> document_tokens(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  for (const SentenceSpan& span : split_sentences(text)) out.push_back(tokenize(span.text(text)));
  return out;
}

AnalysisResult analyze(std::string_view text, const AnalysisOptions& options) {
  const auto start = Clock::now();
  if (options.k == 0) throw Error(ErrorCode::InvalidArgument, "segment count k must be at least 1");

  AnalysisResult result;
  std::vector<Sentence> rows;
  Vocabulary vocab;
  run_stage("preprocess", result.timing, [&] {
    result.sentence_tokens = document_tokens(text);
    std::vector<Sentence> all;
    all.reserve(result.sentence_tokens.size());
    for (std::size_t i = 0; i < result.sentence_tokens.size(); ++i) all.push_back({i, i, result.sentence_tokens[i]});
    vocab = build_vocabulary(all, options.stopwords ? *options.stopwords : default_stopwords());
    rows = drop_empty_sentences(std::move(all), vocab);
    for (const Sentence& s : rows) result.matrix_rows.push_back(s.source_index);
    result.vocabulary_size = vocab.size();
    const std::size_t limit = std::min(rows.size(), vocab.size());
    if (options.k > limit) {
      throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(options.k) + " but only " +
                                            std::to_string(rows.size()) + " sentences and " +
                                            std::to_string(vocab.size()) + " words remain after filtering");
    }
  });

  std::vector<std::vector<PosTag>> tags;
  run_stage("tagging", result.timing, [&] {
    std::optional<LexiconTagger> bundled;
    if (options.tagger == nullptr) bundled.emplace();
    const Tagger& tagger = options.tagger != nullptr ? *options.tagger : *bundled;
    tags.reserve(rows.size());
    for (const Sentence& s : rows) tags.push_back(tagger.tag_sentence(s.tokens));
  });

  SparseMatrix bonded;
  std::vector<double> scores;
  run_stage("matrix", result.timing, [&] {
    const CountMatrix counts = build_counts(rows, vocab);
    const PosIndicator indicator = build_pos_indicator(counts, rows, tags, vocab);
    const SparseMatrix awarded = award(counts, indicator, options.lambda);
    scores = word_scores(tfidf(awarded));
    bonded = bond(awarded, options.window, options.decay);
  });

  RegularizedLaplacian laplacian;
  run_stage("laplacian", result.timing, [&] {
    const Regularization defaults = default_taus(degree_diagonals(bonded));
    laplacian = regularized_laplacian(std::move(bonded), options.tau_p.value_or(defaults.tau_p),
                                      options.tau_o.value_or(defaults.tau_o));
  });

  SpectralEmbedding embedding;
  run_stage("svd", result.timing, [&] {
    SvdOptions svd;
    svd.seed = options.seed;
    embedding = normalize_rows(truncated_svd(laplacian, options.k, svd));
    result.singular_values = embedding.singular_values;
  });

  run_stage("topics", result.timing, [&] {
    KMeansOptions km;
    km.seed = options.seed;
    result.topics = topics_from_labels(kmeans(embedding.words, options.k, km), scores, vocab);
  });

  run_stage("segments", result.timing, [&] {
    result.matrix_segments =
        constrained_agglomerative(embedding.sentences, options.k, embedding.degenerate_sentences).segmentation;
    result.segments =
        to_source_sentences(result.matrix_segments, result.matrix_rows, result.sentence_tokens.size());
  });

  result.parameters = {options.k,       options.lambda, options.window, options.decay,
                       laplacian.tau_p, laplacian.tau_o, options.seed};
  result.total_milliseconds = elapsed_ms(start);
  return result;
}

EvaluationReport evaluate(std::span<const std::vector<std::string>> topics, const Segmentation& hypothesis,
                          const Segmentation& reference, std::span<const std::vector<std::string>> sentence_tokens,
                          const EvaluationOptions& options) {
  if (topics.empty()) throw Error(ErrorCode::InvalidArgument, "no topics to evaluate");
  if (hypothesis.sentence_count != sentence_tokens.size() || reference.sentence_count != sentence_tokens.size()) {
    throw Error(ErrorCode::LengthMismatch, "document has " + std::to_string(sentence_tokens.size()) +
                                               " sentences; hypothesis covers " +
                                               std::to_string(hypothesis.sentence_count) + ", reference " +
                                               std::to_string(reference.sentence_count));
  }

  EvaluationReport report;
  report.sentence_units = options.sentence_units;
  report.external_corpus = options.corpus.has_value();
  const ReferenceCorpus document_corpus = ReferenceCorpus::from_token_lists(sentence_tokens);
  const ReferenceCorpus& pmi_corpus = options.corpus ? *options.corpus : document_corpus;
  if (!options.corpus) report.warnings.push_back("no external corpus given; PMI uses the document's own sentences");

  std::vector<std::vector<std::string>> top;
  std::vector<WordSet> top_sets;
  for (const auto& topic : topics) {
    const std::size_t take = options.top_k == 0 ? topic.size() : std::min(options.top_k, topic.size());
    top.emplace_back(topic.begin(), topic.begin() + static_cast<std::ptrdiff_t>(take));
    top_sets.emplace_back(top.back().begin(), top.back().end());
  }

  const auto score = [&](std::size_t t, const char* name, auto&& f) -> std::optional<double> {
    try {
      return f();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateTopic && e.code() != ErrorCode::UndefinedProbability) throw;
      report.warnings.push_back(std::string(name) + " of topic " + std::to_string(t) + " not scored: " + e.detail());
      return std::nullopt;
    }
  };
  for (std::size_t t = 0; t < top.size(); ++t) {
    report.pmi.push_back(score(t, "PMI", [&] { return pmi(top[t], pmi_corpus); }));
    report.umass.push_back(score(t, "UMass", [&] { return umass(top[t], document_corpus); }));
  }

  const bool all_non_empty = std::all_of(top_sets.begin(), top_sets.end(), [](const WordSet& s) { return !s.empty(); });
  if (!all_non_empty) {
    report.warnings.push_back("a topic has no words; diversity and composite scores skipped");
  } else {
    report.jaccard = similarity_matrix(top_sets, Similarity::Jaccard);
    report.dice = similarity_matrix(top_sets, Similarity::Dice);
  }

  // Composites over the topics that received a score.
  const auto composites = [&](const std::vector<std::optional<double>>& values, auto&& combine,
                              std::optional<double>& mean, std::optional<double>& with_jaccard,
                              std::optional<double>& with_dice) {
    std::vector<Eigen::Index> kept;
    std::vector<double> scores;
    for (std::size_t t = 0; t < values.size(); ++t) {
      if (!values[t]) continue;
      kept.push_back(static_cast<Eigen::Index>(t));
      scores.push_back(*values[t]);
    }
    if (scores.empty()) return;
    mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    if (!all_non_empty) return;
    const auto n = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXd jac(n, n), dic(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        jac(a, b) = report.jaccard(kept[static_cast<std::size_t>(a)], kept[static_cast<std::size_t>(b)]);
        dic(a, b) = report.dice(kept[static_cast<std::size_t>(a)], kept[static_cast<std::size_t>(b)]);
      }
    }
    with_jaccard = combine(scores, jac);
    with_dice = combine(scores, dic);
  };
  composites(report.pmi, [](const std::vector<double>& v, const Eigen::MatrixXd& m) { return composite_pmi(v, m); },
             report.mean_pmi, report.pmi_jaccard, report.pmi_dice);
  composites(report.umass,
             [](const std::vector<double>& v, const Eigen::MatrixXd& m) { return composite_umass(v, m); },
             report.mean_umass, report.umass_jaccard, report.umass_dice);

  std::vector<std::size_t> units;
  for (const auto& tokens : sentence_tokens) units.push_back(options.sentence_units ? 1 : tokens.size());
  report.segmentation = evaluate_segmentation(reference, hypothesis, units, options.window);
  return report;
}

}  // namespace specseg
