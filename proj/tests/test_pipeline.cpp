#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "specseg/doc_matrix.hpp"
#include "specseg/error.hpp"
#include "specseg/io.hpp"
#include "specseg/pipeline.hpp"
#include "specseg/spectral.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace specseg;

namespace {

std::string sample() { return testing::read_text(std::string(SPECSEG_DATA_DIR) + "/sample_three_topics.txt"); }

AnalysisResult run(const std::string& text, std::size_t k, std::uint64_t seed = 0) {
  AnalysisOptions o;
  o.k = k;
  o.seed = seed;
  return analyze(text, o);
}

std::vector<std::vector<std::string>> topic_words(const AnalysisResult& r) {
  std::vector<std::vector<std::string>> out;
  for (const auto& topic : r.topics.topics) {
    out.emplace_back();
    for (const auto& w : topic) out.back().push_back(w.word);
  }
  return out;
}

void check_structure(const AnalysisResult& r, std::size_t k) {
  REQUIRE(r.topics.topics.size() == k);
  CHECK(r.segments.k() == k);
  CHECK(r.matrix_segments.k() == k);
  CHECK(r.segments.sentence_count == r.sentence_tokens.size());
  CHECK_NOTHROW(r.segments.validate());

  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& topic : r.topics.topics) {
    CHECK(!topic.empty());
    for (std::size_t i = 0; i < topic.size(); ++i) {
      seen.insert(topic[i].word);
      if (i > 0) CHECK(topic[i - 1].score >= topic[i].score);
    }
    total += topic.size();
  }
  CHECK(seen.size() == total);
  CHECK(total == r.vocabulary_size);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("sample document with three topics") {
  const AnalysisResult r = run(sample(), 3);
  check_structure(r, 3);
  CHECK(r.sentence_tokens.size() == 27);
  CHECK(r.parameters.k == 3);
  CHECK(r.parameters.lambda == 1.0);
  CHECK(r.parameters.window == 5);
  CHECK(r.parameters.decay == 0.7);
  CHECK(r.singular_values.size() == 3);
}

TEST_CASE("sample document recovers its paragraphs and themes") {
  const AnalysisResult r = run(sample(), 3);
  const std::vector<std::size_t> truth{8, 17};
  REQUIRE(r.segments.boundaries.size() == truth.size());
  for (std::size_t b = 0; b < truth.size(); ++b) {
    const auto got = static_cast<long>(r.segments.boundaries[b]);
    CHECK(std::abs(got - static_cast<long>(truth[b])) <= 1);
  }

  const auto topic_of = [&](const std::string& word) {
    for (std::size_t t = 0; t < r.topics.topics.size(); ++t) {
      for (const TopicWord& w : r.topics.topics[t]) {
        if (w.word == word) return t;
      }
    }
    return r.topics.topics.size();
  };
  const std::set<std::size_t> themes{topic_of("galaxy"), topic_of("bread"), topic_of("team")};
  CHECK(themes.size() == 3);
  CHECK(themes.count(r.topics.topics.size()) == 0);
}

TEST_CASE("parameters echo the resolved regularization") {
  const AnalysisResult r = run(sample(), 2);
  CHECK(r.parameters.tau_p > 0.0);
  CHECK(r.parameters.tau_o > 0.0);

  AnalysisOptions o;
  o.k = 2;
  o.tau_p = 2.5;
  o.tau_o = 0.5;
  const AnalysisResult fixed = analyze(sample(), o);
  CHECK(fixed.parameters.tau_p == 2.5);
  CHECK(fixed.parameters.tau_o == 0.5);
}

TEST_CASE("default regularization is the average degree of the bonded matrix") {
  const std::string text = "Apples grow on trees. Trees need water and apples need sun. Water helps trees. Sun helps apples grow.";
  const AnalysisResult r = run(text, 2);

  const auto tokens = document_tokens(text);
  std::vector<Sentence> sentences;
  for (std::size_t i = 0; i < tokens.size(); ++i) sentences.push_back({i, i, tokens[i]});
  const Vocabulary vocab = build_vocabulary(sentences, default_stopwords());
  const auto rows = drop_empty_sentences(sentences, vocab);
  const LexiconTagger tagger;
  std::vector<std::vector<PosTag>> tags;
  for (const auto& s : rows) tags.push_back(tagger.tag_sentence(s.tokens));
  const CountMatrix counts = build_counts(rows, vocab);
  const SparseMatrix bonded = bond(award(counts, build_pos_indicator(counts, rows, tags, vocab), 1.0), 5, 0.7);
  const Eigen::MatrixXd x = bonded.to_dense();
  CHECK(r.parameters.tau_o == doctest::Approx(x.sum() / static_cast<double>(x.rows())).epsilon(1e-12));
  CHECK(r.parameters.tau_p == doctest::Approx(x.sum() / static_cast<double>(x.cols())).epsilon(1e-12));
}

TEST_CASE("one segment") {
  const AnalysisResult r = run(sample(), 1);
  check_structure(r, 1);
  CHECK(r.segments.boundaries.empty());
  CHECK(r.topics.topics[0].size() == r.vocabulary_size);
}

TEST_CASE("too many segments") {
  const std::string text = "Cats chase mice. Mice fear cats. Cats sleep.";
  const ErrorCode code = code_of([&] { run(text, 4); });
  CHECK(code == ErrorCode::KTooLarge);
  try {
    run(text, 4);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("preprocess") != std::string::npos);
  }
  CHECK(code_of([&] { run(text, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("document without repeated content words") {
  CHECK(code_of([] { run("Alpha beta. Gamma delta.", 1); }) == ErrorCode::EmptyVocabulary);
  CHECK(code_of([] { run("   ", 1); }) == ErrorCode::EmptyDocument);
}

TEST_CASE("sentences without vocabulary words join the preceding segment") {
  const std::string text =
      "Rockets launch satellites. Satellites orbit and rockets burn fuel. It was so. "
      "Gardens need soil. Soil feeds gardens and flowers. Flowers bloom in soil.";
  const AnalysisResult r = run(text, 2);
  CHECK(r.sentence_tokens.size() == 6);
  CHECK(r.matrix_rows == std::vector<std::size_t>{0, 1, 3, 4, 5});
  CHECK(r.segments.ranges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {3, 5}});
  CHECK(r.matrix_segments.ranges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 4}});
}

TEST_CASE("analysis is deterministic per seed") {
  specseg::Rng rng(101);
  const auto doc = testing::synthetic_document(rng, {});
  ResultJsonOptions json;
  json.top_words = 0;
  const std::string a = dump_json(result_to_json(run(doc.text, 3, 7), json));
  const std::string b = dump_json(result_to_json(run(doc.text, 3, 7), json));
  CHECK(a == b);
}

TEST_CASE("synthetic documents keep the output structure") {
  specseg::Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    testing::SyntheticOptions o;
    o.topics = 2 + rng.below(4);
    const auto doc = testing::synthetic_document(rng, o);
    const std::size_t k = 1 + rng.below(6);
    CAPTURE(trial);
    const AnalysisResult r = run(doc.text, k, rng.next());
    check_structure(r, k);
  }
}

TEST_CASE("planted segments are found on clean synthetic documents") {
  specseg::Rng rng(77);
  testing::SyntheticOptions o;
  o.topics = 4;
  o.min_sentences = 10;
  o.max_sentences = 14;
  o.off_topic = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto doc = testing::synthetic_document(rng, o);
    const AnalysisResult r = run(doc.text, 4);
    std::vector<std::pair<std::size_t, std::size_t>> planted;
    std::size_t start = 0;
    for (std::size_t s : doc.segment_sizes) {
      planted.emplace_back(start, start + s - 1);
      start += s;
    }
    const Segmentation reference = Segmentation::from_ranges(planted);
    std::vector<std::size_t> units(r.sentence_tokens.size(), 1);
    CHECK(p_k(reference, r.segments, units) <= 0.2);
  }
}

TEST_CASE("stage timings account for the total") {
  specseg::Rng rng(9);
  testing::SyntheticOptions o;
  o.topics = 5;
  o.min_sentences = 60;
  o.max_sentences = 80;
  o.words_per_topic = 60;
  const auto doc = testing::synthetic_document(rng, o);
  const AnalysisResult r = run(doc.text, 5);
  const std::vector<std::string> stages = {"preprocess", "tagging", "matrix", "laplacian", "svd", "topics", "segments"};
  REQUIRE(r.timing.size() == stages.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    CHECK(r.timing[i].stage == stages[i]);
    CHECK(r.timing[i].milliseconds >= 0.0);
    sum += r.timing[i].milliseconds;
  }
  CHECK(sum <= r.total_milliseconds);
  CHECK(sum >= 0.9 * r.total_milliseconds);
}

TEST_CASE("a swapped-in tagger changes only the awarding") {
  struct NothingIsContent final : Tagger {
    std::vector<PosTag> tag_sentence(std::span<const std::string> tokens) const override {
      return std::vector<PosTag>(tokens.size(), PosTag::Other);
    }
  };
  const NothingIsContent tagger;
  AnalysisOptions with_tagger;
  with_tagger.k = 3;
  with_tagger.tagger = &tagger;
  AnalysisOptions no_award;
  no_award.k = 3;
  no_award.lambda = 0.0;
  const AnalysisResult a = analyze(sample(), with_tagger);
  const AnalysisResult b = analyze(sample(), no_award);
  CHECK(a.segments == b.segments);
  CHECK(topic_words(a) == topic_words(b));
}

TEST_CASE("evaluating a result against its own segments") {
  const AnalysisResult r = run(sample(), 3);
  const auto topics = topic_words(r);
  const EvaluationReport e = evaluate(topics, r.segments, r.segments, r.sentence_tokens, {});
  CHECK(e.segmentation.p_k == 0.0);
  CHECK(e.segmentation.window_diff == 0.0);
  CHECK(e.jaccard.isZero());
  CHECK(e.dice.isZero());
  REQUIRE(e.mean_pmi);
  REQUIRE(e.pmi_jaccard);
  CHECK(std::abs(*e.pmi_jaccard - *e.mean_pmi) <= 1e-12);
  CHECK(std::abs(*e.umass_dice - *e.mean_umass) <= 1e-12);
  CHECK(!e.external_corpus);
  CHECK(!e.warnings.empty());
}

TEST_CASE("evaluation of a fixed fixture") {
  // Four sentences; topics and segments given directly.
  const std::vector<std::vector<std::string>> sentences = {
      {"a", "b", "x"}, {"a", "b"}, {"c", "d", "y", "z"}, {"c", "a"}};
  const std::vector<std::vector<std::string>> topics = {{"a", "b"}, {"c", "d"}};
  const Segmentation hyp = Segmentation::from_ranges({{0, 1}, {2, 3}});
  const Segmentation ref = Segmentation::from_ranges({{0, 2}, {3, 3}});
  const EvaluationReport e = evaluate(topics, hyp, ref, sentences, {});

  // Document frequencies over 4 sentences: a 3, b 2, c 2, d 1; joints ab 2, cd 1.
  const double pmi_ab = std::log((2.0 / 4) / ((3.0 / 4) * (2.0 / 4)));
  const double pmi_cd = std::log((1.0 / 4) / ((2.0 / 4) * (1.0 / 4)));
  const double umass_ab = std::log((2.0 / 4 + 1) / (3.0 / 4));
  const double umass_cd = std::log((1.0 / 4 + 1) / (2.0 / 4));
  REQUIRE(e.pmi.size() == 2);
  CHECK(std::abs(*e.pmi[0] - pmi_ab) <= 1e-12);
  CHECK(std::abs(*e.pmi[1] - pmi_cd) <= 1e-12);
  CHECK(std::abs(*e.umass[0] - umass_ab) <= 1e-12);
  CHECK(std::abs(*e.umass[1] - umass_cd) <= 1e-12);
  CHECK(std::abs(*e.mean_pmi - (pmi_ab + pmi_cd) / 2) <= 1e-12);

  // Word units: lengths 3, 2, 4, 2 (N = 11); reference has 2 segments so the
  // window is round(11 / 4) - 1 = 2. Boundaries after word 4 (hyp) and 8 (ref).
  CHECK(e.segmentation.units == 11);
  CHECK(e.segmentation.window == 2);
  // Windows [i, i + 2] for i = 0..8; disagreements where exactly one side
  // has a boundary inside: i = 3, 4 (hyp only) and 7, 8 (ref only).
  CHECK(e.segmentation.p_k == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(e.segmentation.window_diff == doctest::Approx(4.0 / 9.0).epsilon(1e-15));

  EvaluationOptions sentence_units;
  sentence_units.sentence_units = true;
  sentence_units.window = 1;
  const EvaluationReport s = evaluate(topics, hyp, ref, sentences, sentence_units);
  CHECK(s.segmentation.units == 4);
  CHECK(s.segmentation.p_k == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("external corpus for PMI and unscored topics") {
  const std::vector<std::vector<std::string>> sentences = {{"a", "b"}, {"a", "b"}, {"c"}};
  const std::vector<std::vector<std::string>> topics = {{"a", "b"}, {"c"}};
  const Segmentation seg = Segmentation::from_ranges({{0, 1}, {2, 2}});
  EvaluationOptions o;
  o.corpus = ReferenceCorpus({{"a"}, {"b"}, {"a", "b"}, {"a", "b"}});
  const EvaluationReport e = evaluate(topics, seg, seg, sentences, o);
  CHECK(e.external_corpus);
  CHECK(std::abs(*e.pmi[0] - std::log(0.5 / (0.75 * 0.75))) <= 1e-12);
  CHECK_FALSE(e.pmi[1].has_value());
  CHECK_FALSE(e.umass[1].has_value());
  CHECK(std::abs(*e.mean_pmi - *e.pmi[0]) <= 1e-12);
  CHECK(std::abs(*e.pmi_jaccard - *e.pmi[0]) <= 1e-12);
}

TEST_CASE("reference over a different sentence count") {
  const std::vector<std::vector<std::string>> sentences = {{"a", "b"}, {"a", "b"}, {"c"}};
  const std::vector<std::vector<std::string>> topics = {{"a", "b"}};
  const Segmentation hyp = Segmentation::from_ranges({{0, 2}});
  const Segmentation ref = Segmentation::from_ranges({{0, 3}});
  CHECK(code_of([&] { evaluate(topics, hyp, ref, sentences, {}); }) == ErrorCode::LengthMismatch);
}
