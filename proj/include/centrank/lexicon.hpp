#pragma once

#include <string>
#include <string_view>

// Bundled word lists and the suffix stemmer. The lists are part of the
// repository so that segmentation and tf-idf stay reproducible; bump
// kLexiconVersion whenever one of them changes.
namespace centrank::lexicon {

inline constexpr std::string_view kLexiconVersion = "1";

// Lowercased abbreviation without its trailing period, e.g. "dr", "e.g".
bool is_abbreviation(std::string_view word);

bool is_stopword(std::string_view token);

// Small English suffix stripper. Tokens containing non-ASCII bytes are
// returned unchanged.
std::string stem(std::string_view token);

}  // namespace centrank::lexicon
