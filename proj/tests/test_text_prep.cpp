#include <doctest.h>

#include <algorithm>
#include <cctype>

#include "specseg/error.hpp"
#include "specseg/text_prep.hpp"
#include "support.hpp"

using namespace specseg;

namespace {

std::vector<std::string> sentence_texts(std::string_view text) {
  std::vector<std::string> out;
  for (const SentenceSpan& s : split_sentences(text)) {
    std::string t(s.text(text));
    const auto first = t.find_first_not_of(" \t\r\n");
    const auto last = t.find_last_not_of(" \t\r\n");
    out.push_back(first == std::string::npos ? "" : t.substr(first, last - first + 1));
  }
  return out;
}

std::vector<Sentence> make_sentences(std::vector<std::vector<std::string>> tokens) {
  std::vector<Sentence> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) out.push_back({i, i, std::move(tokens[i])});
  return out;
}

}  // namespace

TEST_CASE("two terminal periods give two sentences") {
  const std::string text = "A b. C d.";
  const auto spans = split_sentences(text);
  REQUIRE(spans.size() == 2);
  CHECK(tokenize(spans[0].text(text)) == std::vector<std::string>{"a", "b"});
  CHECK(tokenize(spans[1].text(text)) == std::vector<std::string>{"c", "d"});
}

TEST_CASE("abbreviation does not end a sentence") {
  CHECK(sentence_texts("Dr. Smith ran. He won.") == std::vector<std::string>{"Dr. Smith ran.", "He won."});
}

TEST_CASE("text without terminator is one sentence") {
  CHECK(split_sentences("no terminator").size() == 1);
}

TEST_CASE("blank document is rejected") {
  CHECK_THROWS_AS(split_sentences(""), Error);
  try {
    split_sentences(" \n\t ");
    FAIL("expected EmptyDocument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyDocument);
  }
}

TEST_CASE("spans tile the input") {
  const std::string text = "First one. Second one?  Third!\n\nFourth without end";
  const auto spans = split_sentences(text);
  REQUIRE(spans.size() == 4);
  CHECK(spans.front().begin == 0);
  CHECK(spans.back().end == text.size());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    CHECK(spans[i].begin == spans[i - 1].end);
    CHECK(spans[i].index == i);
  }
}

TEST_CASE("blank line ends a sentence") {
  CHECK(sentence_texts("A heading\n\nbody text follows here") ==
        std::vector<std::string>{"A heading", "body text follows here"});
}

TEST_CASE("hand-labeled split fixture") {
  const auto expected = testing::fixture_lines("split_sentences.txt");
  REQUIRE(expected.size() == 20);
  std::string spaced, lined;
  for (const auto& s : expected) {
    spaced += s + " ";
    lined += s + "\n";
  }
  CHECK(sentence_texts(spaced) == expected);
  CHECK(sentence_texts(lined) == expected);
}

TEST_CASE("splitting a single sentence again is idempotent") {
  for (const auto& s : testing::fixture_lines("split_sentences.txt")) {
    CAPTURE(s);
    CHECK(sentence_texts(s) == std::vector<std::string>{s});
  }
}

TEST_CASE("tokenize lowercases and strips punctuation") {
  CHECK(tokenize("The CAT, sat!") == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("co-occurrence 42 words") == std::vector<std::string>{"co-occurrence", "words"});
}

TEST_CASE("tokenize edge cases") {
  CHECK(tokenize("the dog's bone") == std::vector<std::string>{"the", "dog", "bone"});
  CHECK(tokenize("'quoted' -dash- well--known") == std::vector<std::string>{"quoted", "dash", "well", "known"});
  CHECK(tokenize("3.14 1,000 -- ... x2") == std::vector<std::string>{"x2"});
  CHECK(tokenize("caf\xC3\xA9 na\xC3\xAFve") == std::vector<std::string>{"caf\xC3\xA9", "na\xC3\xAFve"});
  CHECK(tokenize("left\xE2\x80\x94right") == std::vector<std::string>{"left", "right"});
}

TEST_CASE("tokens are lowercase and never punctuation-only") {
  specseg::Rng rng(7);
  const std::string alphabet = "aZbY.,;:!?'-\"()09 \t";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const std::size_t len = rng.below(60);
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    for (const std::string& tok : tokenize(s)) {
      CAPTURE(s);
      CHECK(!tok.empty());
      CHECK(std::none_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isupper(c) != 0; }));
      CHECK(std::any_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isalpha(c) != 0; }));
    }
  }
}

TEST_CASE("vocabulary drops degree-one words") {
  const auto v = build_vocabulary(make_sentences({{"a", "b"}, {"b", "c"}}), {});
  CHECK(v.words == std::vector<std::string>{"b"});
  CHECK(v.sentence_degree == std::vector<std::size_t>{2});
}

TEST_CASE("vocabulary drops stopwords") {
  const auto v = build_vocabulary(make_sentences({{"x", "y"}, {"x", "y"}}), {"y"});
  CHECK(v.words == std::vector<std::string>{"x"});
  CHECK(v.index_of.at("x") == 0);
}

TEST_CASE("vocabulary with only degree-one words is empty") {
  try {
    build_vocabulary(make_sentences({{"a"}, {"b"}}), {});
    FAIL("expected EmptyVocabulary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyVocabulary);
  }
}

TEST_CASE("repeats within one sentence do not raise the degree") {
  const auto v = build_vocabulary(make_sentences({{"a", "a", "b"}, {"b", "c"}}), {});
  CHECK(v.words == std::vector<std::string>{"b"});
}

TEST_CASE("every vocabulary word occurs in at least two sentences") {
  specseg::Rng rng(11);
  const std::vector<std::string> pool = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<std::string>> tokens(2 + rng.below(8));
    for (auto& s : tokens) {
      const std::size_t len = 1 + rng.below(6);
      for (std::size_t i = 0; i < len; ++i) s.push_back(pool[rng.below(pool.size())]);
    }
    const auto sentences = make_sentences(tokens);
    Vocabulary v;
    try {
      v = build_vocabulary(sentences, {"eta"});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyVocabulary);
      continue;
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      std::size_t degree = 0;
      for (const auto& s : tokens) degree += std::count(s.begin(), s.end(), v.words[j]) > 0 ? 1 : 0;
      CHECK(degree >= 2);
      CHECK(degree == v.sentence_degree[j]);
      CHECK(v.words[j] != "eta");
    }
  }
}

TEST_CASE("sentences without vocabulary words are dropped and re-packed") {
  const auto sentences = make_sentences({{"a", "b"}, {"z"}, {"b", "a"}});
  const auto v = build_vocabulary(sentences, {});
  const auto kept = drop_empty_sentences(sentences, v);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].index == 0);
  CHECK(kept[1].index == 1);
  CHECK(kept[1].source_index == 2);
  CHECK(kept[1].tokens == std::vector<std::string>{"b", "a"});
}

TEST_CASE("word list parsing") {
  const WordSet w = parse_word_list("# comment\nThe\n  and  \n\nof # trailing\n");
  CHECK(w == WordSet{"the", "and", "of"});
  CHECK(default_stopwords().contains("the"));
  CHECK(default_abbreviations().contains("dr"));
}
