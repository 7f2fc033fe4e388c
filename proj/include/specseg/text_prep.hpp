#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace specseg {

using WordSet = std::unordered_set<std::string>;

// A sentence as a half-open byte range of the source text. Consecutive spans
// tile the whole input.
struct SentenceSpan {
  std::size_t index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::string_view text(std::string_view source) const { return source.substr(begin, end - begin); }
};

struct Sentence {
  std::size_t index = 0;         // row in the sentence-word matrix
  std::size_t source_index = 0;  // position among all sentences of the document
  std::vector<std::string> tokens;
};

struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> index_of;
  std::vector<std::size_t> sentence_degree;  // parallel to words

  std::size_t size() const { return words.size(); }
  bool contains(const std::string& word) const { return index_of.contains(word); }
};

class SentenceSplitter {
 public:
  // Uses the bundled abbreviation list.
  SentenceSplitter();
  explicit SentenceSplitter(WordSet abbreviations);

  // Splits on [.?!] (plus trailing quotes/brackets) followed by whitespace and
  // an uppercase letter, unless the preceding word is a known abbreviation or
  // a single-letter initial. A blank line always ends a sentence.
  // Throws EmptyDocument when the text is blank.
  std::vector<SentenceSpan> split(std::string_view text) const;

 private:
  bool is_abbreviation(std::string_view word) const;

  WordSet abbreviations_;
};

std::vector<SentenceSpan> split_sentences(std::string_view text);

// Lowercase word tokens. Hyphens and apostrophes inside a word are kept, a
// trailing possessive 's is dropped, and tokens without any letter are removed.
std::vector<std::string> tokenize(std::string_view sentence_text);

// Keeps non-stopword tokens found in at least two distinct sentences; column
// order is first occurrence. Throws EmptyVocabulary if nothing survives.
Vocabulary build_vocabulary(std::span<const Sentence> sentences, const WordSet& stopwords);

// Parses one-word-per-line text with '#' comments.
WordSet parse_word_list(std::string_view text);
WordSet default_stopwords();
WordSet default_abbreviations();

// Drops sentences that contain no vocabulary word and re-packs the row
// indices. Tokens and source_index are kept as they were.
std::vector<Sentence> drop_empty_sentences(std::span<const Sentence> sentences, const Vocabulary& vocab);
std::vector<Sentence> drop_empty_sentences(std::vector<Sentence>&& sentences, const Vocabulary& vocab);

}  // namespace specseg
