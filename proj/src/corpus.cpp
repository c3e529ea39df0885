#include "centrank/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "centrank/error.hpp"
#include "centrank/lexicon.hpp"
#include "utf8.hpp"

namespace centrank {
namespace {

using nlohmann::json;

bool is_ascii_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?'; }

bool is_cjk_terminator(char32_t cp) { return cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F; }

bool is_closer(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' || cp == 0x201D ||
         cp == 0x2019 || cp == 0x300D || cp == 0x300F || cp == 0xFF09;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size()) {
    auto cp = utf8::decode(s, b);
    if (!utf8::is_space(cp.value)) break;
    b += cp.length;
  }
  std::size_t e = s.size();
  while (e > b) {
    // step back to the start of the previous codepoint
    std::size_t p = e - 1;
    while (p > b && (static_cast<unsigned char>(s[p]) & 0xC0) == 0x80) --p;
    if (!utf8::is_space(utf8::decode(s, p).value)) break;
    e = p;
  }
  return s.substr(b, e - b);
}

// Lowercased word ending right before `pos`, without leading punctuation.
// The scan never crosses `floor`, the start of the current sentence.
std::string word_before(std::string_view text, std::size_t floor, std::size_t pos) {
  std::size_t b = pos;
  while (b > floor) {
    const auto c = static_cast<unsigned char>(text[b - 1]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') break;
    --b;
  }
  std::string word(text.substr(b, pos - b));
  std::size_t lead = 0;
  while (lead < word.size() && (word[lead] == '(' || word[lead] == '"' || word[lead] == '\'' ||
                                word[lead] == '[')) {
    ++lead;
  }
  word.erase(0, lead);
  for (auto& c : word) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return word;
}

void push_token(std::vector<std::string>& out, std::string_view piece) {
  std::size_t b = 0;
  std::size_t e = piece.size();
  while (b < e) {
    auto cp = utf8::decode(piece, b);
    if (!utf8::is_punct(cp.value)) break;
    b += cp.length;
  }
  while (e > b) {
    std::size_t p = e - 1;
    while (p > b && (static_cast<unsigned char>(piece[p]) & 0xC0) == 0x80) --p;
    if (!utf8::is_punct(utf8::decode(piece, p).value)) break;
    e = p;
  }
  if (b == e) return;
  std::string token(piece.substr(b, e - b));
  for (auto& c : token) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  out.push_back(std::move(token));
}

// Splits one whitespace-free chunk: CJK characters become single tokens,
// everything between them is handled as an ordinary word.
void split_chunk(std::vector<std::string>& out, std::string_view chunk) {
  std::size_t run_start = 0;
  std::size_t pos = 0;
  while (pos < chunk.size()) {
    auto cp = utf8::decode(chunk, pos);
    if (utf8::is_cjk(cp.value) && !utf8::is_punct(cp.value)) {
      push_token(out, chunk.substr(run_start, pos - run_start));
      out.emplace_back(chunk.substr(pos, cp.length));
      run_start = pos + cp.length;
    }
    pos += cp.length;
  }
  push_token(out, chunk.substr(run_start));
}

std::string line_context(std::size_t line_no) { return " at line " + std::to_string(line_no); }

}  // namespace

std::vector<Sentence> segment(std::string_view text) {
  std::vector<Sentence> out;
  auto emit = [&](std::size_t b, std::size_t e) {
    auto piece = trim(text.substr(b, e - b));
    if (piece.empty()) return;
    Sentence s;
    s.index = out.size();
    s.text = std::string(piece);
    s.tokens = tokenize(s.text);
    out.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto cp = utf8::decode(text, pos);
    const bool ascii_term = is_ascii_terminator(cp.value);
    const bool cjk_term = is_cjk_terminator(cp.value);
    if (!ascii_term && !cjk_term) {
      pos += cp.length;
      continue;
    }
    // Absorb runs like "?!" or ".”" into the same boundary.
    std::size_t end = pos + cp.length;
    bool single_period = cp.value == U'.';
    while (end < text.size()) {
      auto next = utf8::decode(text, end);
      if (is_ascii_terminator(next.value) || is_cjk_terminator(next.value)) {
        single_period = false;
      } else if (!is_closer(next.value)) {
        break;
      }
      end += next.length;
    }
    bool boundary = cjk_term;
    if (!boundary) {
      const bool followed_by_space =
          end == text.size() || utf8::is_space(utf8::decode(text, end).value);
      boundary = followed_by_space;
      if (boundary && single_period && end < text.size() &&
          lexicon::is_abbreviation(word_before(text, start, pos))) {
        boundary = false;
      }
    }
    if (boundary) {
      emit(start, end);
      start = end;
    }
    pos = end;
  }
  emit(start, text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t chunk_start = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto cp = utf8::decode(text, pos);
    if (utf8::is_space(cp.value)) {
      if (pos > chunk_start) split_chunk(out, text.substr(chunk_start, pos - chunk_start));
      chunk_start = pos + cp.length;
    }
    pos += cp.length;
  }
  if (text.size() > chunk_start) split_chunk(out, text.substr(chunk_start));
  return out;
}

Document make_document(std::string id, std::string text, std::optional<std::string> reference) {
  Document doc;
  doc.sentences = segment(text);
  if (doc.sentences.empty()) {
    throw DataError("document " + id + " has no sentences");
  }
  doc.id = std::move(id);
  doc.text = std::move(text);
  doc.reference = std::move(reference);
  return doc;
}

std::vector<Document> read_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("malformed JSON" + line_context(line_no) + ": " + e.what());
    }
    if (!record.is_object()) {
      throw DataError("malformed record" + line_context(line_no) + ": expected an object");
    }
    for (const char* field : {"id", "text"}) {
      if (!record.contains(field)) {
        throw DataError(std::string("missing field ") + field + line_context(line_no));
      }
      if (!record[field].is_string()) {
        throw DataError(std::string("field ") + field + " is not a string" + line_context(line_no));
      }
    }
    std::optional<std::string> summary;
    if (auto it = record.find("summary"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw DataError("field summary is not a string" + line_context(line_no));
      }
      summary = it->get<std::string>();
    }
    auto id = record["id"].get<std::string>();
    auto text = record["text"].get<std::string>();
    try {
      docs.push_back(make_document(std::move(id), std::move(text), std::move(summary)));
    } catch (const DataError& e) {
      throw DataError(e.what() + line_context(line_no));
    }
  }
  if (docs.empty()) throw DataError("empty corpus: no records found");
  return docs;
}

std::vector<Document> load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return read_jsonl(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_jsonl(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    json record = {{"id", doc.id}, {"text", doc.text}};
    if (doc.reference) record["summary"] = *doc.reference;
    out << record.dump() << '\n';
  }
}

void write_sentences_jsonl(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    json sentences = json::array();
    for (const auto& s : doc.sentences) sentences.push_back(s.text);
    out << json{{"id", doc.id}, {"sentences", std::move(sentences)}}.dump() << '\n';
  }
}

CorpusStats stats(std::span<const Document> corpus) {
  if (corpus.empty()) throw DataError("stats: empty corpus");
  CorpusStats st;
  st.doc_count = corpus.size();
  double doc_words = 0, doc_sents = 0, ref_words = 0, ref_sents = 0;
  for (const auto& doc : corpus) {
    doc_words += static_cast<double>(tokenize(doc.text).size());
    doc_sents += static_cast<double>(doc.sentences.size());
    if (doc.reference) {
      ++st.ref_docs;
      ref_words += static_cast<double>(tokenize(*doc.reference).size());
      ref_sents += static_cast<double>(segment(*doc.reference).size());
    }
  }
  const auto n = static_cast<double>(st.doc_count);
  st.avg_doc_words = doc_words / n;
  st.avg_doc_sents = doc_sents / n;
  if (st.ref_docs > 0) {
    st.avg_ref_words = ref_words / static_cast<double>(st.ref_docs);
    st.avg_ref_sents = ref_sents / static_cast<double>(st.ref_docs);
  }
  return st;
}

}  // namespace centrank
