#include "centrank/lexicon.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

namespace centrank::lexicon {
namespace {

// Abbreviations that are usually followed by more of the same sentence.
// Words like "etc" or "no" are left out because they often close one.
constexpr std::array kAbbreviations = {
    "mr",   "mrs",  "ms",   "dr",   "prof", "sr",   "jr",   "st",   "mt",
    "gen",  "col",  "lt",   "sgt",  "capt", "gov",  "sen",  "rep",  "rev",
    "hon",  "pres", "vs",   "e.g",  "i.e",  "u.s",  "u.k",  "u.n",  "inc",
    "ltd",  "corp", "co",   "jan",  "feb",  "mar",  "apr",  "aug",  "sept",
    "sep",  "oct",  "nov",  "dec",  "approx", "est", "dept", "fig", "vol",
    "p.m",  "a.m",  "ph.d", "mass", "calif", "fla",  "wash", "ariz", "conn"};

constexpr std::array kStopwords = {
    "a",        "about",   "above",   "after",   "again",   "against", "all",
    "am",       "an",      "and",     "any",     "are",     "as",      "at",
    "be",       "because", "been",    "before",  "being",   "below",   "between",
    "both",     "but",     "by",      "can",     "could",   "did",     "do",
    "does",     "doing",   "down",    "during",  "each",    "few",     "for",
    "from",     "further", "had",     "has",     "have",    "having",  "he",
    "her",      "here",    "hers",    "herself", "him",     "himself", "his",
    "how",      "i",       "if",      "in",      "into",    "is",      "it",
    "its",      "itself",  "just",    "me",      "more",    "most",    "my",
    "myself",   "no",      "nor",     "not",     "now",     "of",      "off",
    "on",       "once",    "only",    "or",      "other",   "our",     "ours",
    "ourselves", "out",    "over",    "own",     "said",    "same",    "she",
    "should",   "so",      "some",    "such",    "than",    "that",    "the",
    "their",    "theirs",  "them",    "themselves", "then", "there",   "these",
    "they",     "this",    "those",   "through", "to",      "too",     "under",
    "until",    "up",      "very",    "was",     "we",      "were",    "what",
    "when",     "where",   "which",   "while",   "who",     "whom",    "why",
    "will",     "with",    "would",   "you",     "your",    "yours",   "yourself",
    "yourselves", "also",  "may",     "might",   "must",    "shall",
    "s",        "t",       "'s",      "n't"};

template <std::size_t N>
std::unordered_set<std::string_view> to_set(const std::array<const char*, N>& words) {
  return {words.begin(), words.end()};
}

bool has_vowel(std::string_view s) {
  return s.find_first_of("aeiouy") != std::string_view::npos;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

bool is_abbreviation(std::string_view word) {
  static const auto set = to_set(kAbbreviations);
  return set.contains(word);
}

bool is_stopword(std::string_view token) {
  static const auto set = to_set(kStopwords);
  return set.contains(token);
}

std::string stem(std::string_view token) {
  if (std::any_of(token.begin(), token.end(),
                  [](char c) { return static_cast<unsigned char>(c) >= 0x80; })) {
    return std::string(token);
  }
  std::string w(token);
  if (w.size() <= 3) return w;

  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies") && w.size() > 4) {
    w.replace(w.size() - 3, 3, "y");
  } else if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
             !ends_with(w, "is")) {
    w.pop_back();
  }

  // Each rule keeps at least three characters and one vowel in the stem.
  for (std::string_view suffix : {"ingly", "edly", "ing", "ed", "ly", "ment"}) {
    if (ends_with(w, suffix)) {
      std::string_view rest(w.data(), w.size() - suffix.size());
      if (rest.size() >= 3 && has_vowel(rest)) {
        w.resize(rest.size());
      }
      break;
    }
  }
  return w;
}

}  // namespace centrank::lexicon
