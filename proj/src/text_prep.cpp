#include "specseg/text_prep.hpp"

#include <algorithm>
#include <cctype>

#include "resources.hpp"
#include "specseg/error.hpp"

namespace specseg {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_terminator(char c) { return c == '.' || c == '?' || c == '!'; }
bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }
bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{'; }

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Length of a UTF-8 punctuation or no-break-space sequence starting at i, or 0.
std::size_t utf8_separator_length(std::string_view s, std::size_t i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  if (i + 1 < s.size() && byte(i) == 0xC2) {
    const unsigned char b = byte(i + 1);
    if (b == 0xA0 || b == 0xAB || b == 0xBB || b == 0xB7) return 2;
  }
  // U+2000..U+206F: dashes, curly quotes, ellipsis and friends.
  if (i + 2 < s.size() && byte(i) == 0xE2 && (byte(i + 1) == 0x80 || byte(i + 1) == 0x81)) return 3;
  return 0;
}

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) != 0 || c == '-' || c == '\'' || c >= 0x80;
}

bool has_letter(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) != 0 || u >= 0x80;
  });
}

void emit_token(std::string_view raw, std::vector<std::string>& out) {
  // A run of two or more hyphens separates words ("word--word").
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t cut = raw.find("--", start);
    std::string_view piece = raw.substr(start, cut == std::string_view::npos ? raw.size() - start : cut - start);
    while (!piece.empty() && (piece.front() == '-' || piece.front() == '\'')) piece.remove_prefix(1);
    while (!piece.empty() && (piece.back() == '-' || piece.back() == '\'')) piece.remove_suffix(1);
    if (piece.size() > 2 && (piece.ends_with("'s") || piece.ends_with("'S"))) piece.remove_suffix(2);
    if (!piece.empty() && has_letter(piece)) out.push_back(ascii_lower(piece));
    if (cut == std::string_view::npos) break;
    start = cut + 2;
    while (start < raw.size() && raw[start] == '-') ++start;
  }
}

}  // namespace

SentenceSplitter::SentenceSplitter() : abbreviations_(default_abbreviations()) {}

SentenceSplitter::SentenceSplitter(WordSet abbreviations) : abbreviations_(std::move(abbreviations)) {}

bool SentenceSplitter::is_abbreviation(std::string_view word) const {
  while (!word.empty() && is_opener(word.front())) word.remove_prefix(1);
  if (word.empty()) return false;
  if (word.size() == 1 && is_upper(word.front())) return true;  // initial
  return abbreviations_.contains(ascii_lower(word));
}

std::vector<SentenceSpan> SentenceSplitter::split(std::string_view text) const {
  if (std::all_of(text.begin(), text.end(), is_space)) {
    throw Error(ErrorCode::EmptyDocument, "document contains no text");
  }

  std::vector<std::size_t> starts{0};
  const std::size_t len = text.size();
  std::size_t i = 0;
  while (i < len) {
    const char c = text[i];
    if (c == '\n') {
      std::size_t j = i + 1;
      bool blank_line = false;
      while (j < len && is_space(text[j])) {
        if (text[j] == '\n') blank_line = true;
        ++j;
      }
      if (blank_line && j < len) starts.push_back(j);
      i = j;
      continue;
    }
    if (!is_terminator(c)) {
      ++i;
      continue;
    }

    std::size_t j = i + 1;
    while (j < len && (is_terminator(text[j]) || is_closer(text[j]))) ++j;
    if (j >= len || !is_space(text[j])) {
      i = j;
      continue;
    }
    std::size_t next = j;
    while (next < len && is_space(text[next])) ++next;
    std::size_t probe = next;
    while (probe < len && is_opener(text[probe])) ++probe;
    const bool capital_follows = probe < len && is_upper(text[probe]);

    bool boundary = capital_follows;
    if (boundary && c == '.' && j == i + 1) {
      std::size_t word_begin = i;
      while (word_begin > 0 && !is_space(text[word_begin - 1])) --word_begin;
      boundary = !is_abbreviation(text.substr(word_begin, i - word_begin));
    }
    if (boundary) starts.push_back(next);
    i = next;
  }

  std::vector<SentenceSpan> spans;
  spans.reserve(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const std::size_t end = s + 1 < starts.size() ? starts[s + 1] : len;
    spans.push_back({s, starts[s], end});
  }
  return spans;
}

std::vector<SentenceSpan> split_sentences(std::string_view text) {
  static const SentenceSplitter splitter;
  return splitter.split(text);
}

std::vector<std::string> tokenize(std::string_view sentence_text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t len = sentence_text.size();
  while (i < len) {
    std::size_t j = i;
    while (j < len && utf8_separator_length(sentence_text, j) == 0 &&
           is_word_byte(static_cast<unsigned char>(sentence_text[j]))) {
      ++j;
    }
    if (j > i) {
      emit_token(sentence_text.substr(i, j - i), tokens);
      i = j;
      continue;
    }
    const std::size_t sep = utf8_separator_length(sentence_text, i);
    i += sep > 0 ? sep : 1;
  }
  return tokens;
}

Vocabulary build_vocabulary(std::span<const Sentence> sentences, const WordSet& stopwords) {
  struct Seen {
    std::size_t degree = 0;
    std::size_t last = 0;
    bool stopword = false;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Seen> degree;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (const std::string& token : sentences[s].tokens) {
      auto [it, inserted] = degree.try_emplace(token);
      if (inserted) {
        it->second.stopword = stopwords.contains(token);
        if (!it->second.stopword) order.push_back(token);
      }
      if (it->second.stopword || it->second.last == s + 1) continue;
      it->second.last = s + 1;
      ++it->second.degree;
    }
  }

  Vocabulary vocab;
  for (const std::string& word : order) {
    const std::size_t d = degree.at(word).degree;
    if (d < 2) continue;
    vocab.index_of.emplace(word, vocab.words.size());
    vocab.words.push_back(word);
    vocab.sentence_degree.push_back(d);
  }
  if (vocab.words.empty()) {
    throw Error(ErrorCode::EmptyVocabulary, "no non-stopword occurs in more than one sentence");
  }
  return vocab;
}

std::vector<Sentence> drop_empty_sentences(std::span<const Sentence> sentences, const Vocabulary& vocab) {
  std::vector<Sentence> kept;
  for (const Sentence& sentence : sentences) {
    const bool any = std::any_of(sentence.tokens.begin(), sentence.tokens.end(),
                                 [&](const std::string& t) { return vocab.contains(t); });
    if (!any) continue;
    Sentence packed = sentence;
    packed.index = kept.size();
    kept.push_back(std::move(packed));
  }
  return kept;
}

std::vector<Sentence> drop_empty_sentences(std::vector<Sentence>&& sentences, const Vocabulary& vocab) {
  std::vector<Sentence> kept;
  kept.reserve(sentences.size());
  for (Sentence& sentence : sentences) {
    if (std::none_of(sentence.tokens.begin(), sentence.tokens.end(),
                     [&](const std::string& t) { return vocab.contains(t); })) {
      continue;
    }
    sentence.index = kept.size();
    kept.push_back(std::move(sentence));
  }
  return kept;
}

WordSet parse_word_list(std::string_view text) {
  WordSet words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
    if (!line.empty()) words.insert(ascii_lower(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return words;
}

WordSet default_stopwords() { return parse_word_list(resources::default_stopwords()); }

WordSet default_abbreviations() { return parse_word_list(resources::default_abbreviations()); }

}  // namespace specseg
