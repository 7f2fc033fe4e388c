#include "specseg/pos_tagger.hpp"

#include <array>

#include "resources.hpp"
#include "specseg/error.hpp"

namespace specseg {
namespace {

// Words after which an unknown base form reads as a verb.
constexpr std::array kVerbCues = {"to", "will", "would", "can", "could", "shall", "should",
                                  "may", "might", "must", "do", "does", "did", "not"};

bool has_stem_suffix(std::string_view word, std::string_view suffix, std::size_t min_stem) {
  return word.size() >= suffix.size() + min_stem && word.ends_with(suffix);
}

}  // namespace

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Other: return "OTHER";
  }
  return "OTHER";
}

LexiconTagger::LexiconTagger() : lexicon_(parse_lexicon(resources::default_pos_lexicon())) {}

LexiconTagger::LexiconTagger(std::unordered_map<std::string, PosTag> lexicon) : lexicon_(std::move(lexicon)) {}

std::unordered_map<std::string, PosTag> LexiconTagger::parse_lexicon(std::string_view text) {
  std::unordered_map<std::string, PosTag> lexicon;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, "lexicon line " + std::to_string(line_no) + " has no TAB");
    }
    const std::string word(line.substr(0, tab));
    const std::string_view cls = line.substr(tab + 1);
    PosTag tag;
    if (cls == "NOUN") {
      tag = PosTag::Noun;
    } else if (cls == "VERB") {
      tag = PosTag::Verb;
    } else if (cls == "OTHER") {
      tag = PosTag::Other;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "lexicon line " + std::to_string(line_no) + ": unknown class '" + std::string(cls) + "'");
    }
    lexicon[word] = tag;
  }
  return lexicon;
}

PosTag LexiconTagger::tag_word(std::string_view word, const std::string* previous) const {
  if (auto it = lexicon_.find(std::string(word)); it != lexicon_.end()) return it->second;

  if (has_stem_suffix(word, "tion", 2) || has_stem_suffix(word, "tions", 2) || has_stem_suffix(word, "ment", 3) ||
      has_stem_suffix(word, "ments", 3) || has_stem_suffix(word, "ness", 3) || has_stem_suffix(word, "ity", 3) ||
      has_stem_suffix(word, "ities", 3)) {
    return PosTag::Noun;
  }
  if (has_stem_suffix(word, "ing", 3) || has_stem_suffix(word, "ed", 3) || has_stem_suffix(word, "ize", 2) ||
      has_stem_suffix(word, "izes", 2) || has_stem_suffix(word, "ise", 3) || has_stem_suffix(word, "ises", 3)) {
    return PosTag::Verb;
  }
  if (has_stem_suffix(word, "ly", 3) || has_stem_suffix(word, "ous", 3) || has_stem_suffix(word, "ful", 3) ||
      has_stem_suffix(word, "able", 3) || has_stem_suffix(word, "ible", 3) || has_stem_suffix(word, "ive", 3) ||
      has_stem_suffix(word, "al", 4) || has_stem_suffix(word, "ic", 4) || has_stem_suffix(word, "less", 3)) {
    return PosTag::Other;
  }
  if (previous != nullptr) {
    for (const char* cue : kVerbCues) {
      if (*previous == cue) return PosTag::Verb;
    }
  }
  return PosTag::Noun;
}

std::vector<PosTag> LexiconTagger::tag_sentence(std::span<const std::string> tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tags.push_back(tag_word(tokens[i], i > 0 ? &tokens[i - 1] : nullptr));
  }
  return tags;
}

}  // namespace specseg
