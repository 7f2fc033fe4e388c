#pragma once

#include <string_view>

// Contents of the files under data/, embedded at configure time.
namespace specseg::resources {

std::string_view default_stopwords();
std::string_view default_abbreviations();
std::string_view default_pos_lexicon();

}  // namespace specseg::resources
