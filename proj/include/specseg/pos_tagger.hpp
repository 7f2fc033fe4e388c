#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace specseg {

enum class PosTag { Noun, Verb, Other };

constexpr bool is_content(PosTag tag) { return tag == PosTag::Noun || tag == PosTag::Verb; }

std::string_view to_string(PosTag tag);

// Only the noun/verb-versus-other distinction is consumed downstream, so any
// tagger that can produce it can be plugged in.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<PosTag> tag_sentence(std::span<const std::string> tokens) const = 0;
};

// Closed-class lexicon plus suffix rules. Unknown words default to nouns.
class LexiconTagger final : public Tagger {
 public:
  // Loads the bundled lexicon.
  LexiconTagger();
  explicit LexiconTagger(std::unordered_map<std::string, PosTag> lexicon);

  // Parses "word<TAB>class" lines; '#' comments and blank lines are ignored.
  static std::unordered_map<std::string, PosTag> parse_lexicon(std::string_view text);

  std::vector<PosTag> tag_sentence(std::span<const std::string> tokens) const override;

  PosTag tag_word(std::string_view word, const std::string* previous = nullptr) const;

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace specseg
