#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace centrank {

struct Sentence {
  std::size_t index = 0;
  std::string text;
  std::vector<std::string> tokens;
};

struct Document {
  std::string id;
  std::string text;  // raw input text, kept for round-tripping
  std::vector<Sentence> sentences;
  std::optional<std::string> reference;

  std::size_t size() const { return sentences.size(); }
};

struct CorpusStats {
  std::size_t doc_count = 0;
  double avg_doc_words = 0.0;
  double avg_doc_sents = 0.0;
  double avg_ref_words = 0.0;
  double avg_ref_sents = 0.0;
  // Number of documents carrying a reference; the ref averages are over these.
  std::size_t ref_docs = 0;
};

// Splits on . ! ? (and 。！？) followed by whitespace or end of text.
// A period after a bundled abbreviation does not end a sentence. CJK
// terminators end a sentence regardless of what follows.
std::vector<Sentence> segment(std::string_view text);

// Lowercases ASCII, splits on whitespace, strips edge punctuation and
// drops empties. Runs of CJK characters are split one token per character.
std::vector<std::string> tokenize(std::string_view text);

// Builds a Document from raw fields. Throws DataError if the text yields
// no sentence.
Document make_document(std::string id, std::string text,
                       std::optional<std::string> reference = std::nullopt);

// One JSON object per line: {"id": str, "text": str, "summary"?: str}.
// Blank lines are skipped. Errors name the 1-based line number.
std::vector<Document> read_jsonl(std::istream& in);
std::vector<Document> load_jsonl(const std::string& path);

void write_jsonl(std::ostream& out, std::span<const Document> docs);

// Sentence lists for external encoders: {"id": str, "sentences": [str...]}.
void write_sentences_jsonl(std::ostream& out, std::span<const Document> docs);

CorpusStats stats(std::span<const Document> corpus);

}  // namespace centrank
