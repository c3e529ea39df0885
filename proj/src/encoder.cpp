#include "centrank/encoder.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "centrank/error.hpp"
#include "centrank/lexicon.hpp"

namespace centrank {
namespace {

using nlohmann::json;

constexpr const char* kParamsFormat = "centrank-encoder-v1";

// Python's json module writes NaN/Infinity as bare literals, which are not
// JSON. Rewrite them to null outside of strings so they surface as
// non-finite values with a position instead of a parse error.
std::string nonfinite_literals_to_null(const std::string& line) {
  std::string out;
  out.reserve(line.size());
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < line.size()) {
        out += line[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
      continue;
    }
    auto starts = [&](std::string_view lit) { return line.compare(i, lit.size(), lit) == 0; };
    if (starts("-Infinity")) {
      out += "null";
      i += 8;
    } else if (starts("Infinity")) {
      out += "null";
      i += 7;
    } else if (starts("NaN")) {
      out += "null";
      i += 2;
    } else {
      out += c;
    }
  }
  return out;
}

std::string at_line(std::size_t line_no) { return " at line " + std::to_string(line_no); }

std::vector<double> row_to_vector(const Eigen::MatrixXd& m, Eigen::Index r) {
  std::vector<double> v(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) v[static_cast<std::size_t>(c)] = m(r, c);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// tf-idf

double TfidfModel::idf_of(const std::string& term) const {
  if (auto it = idf.find(term); it != idf.end()) return it->second;
  return std::log(static_cast<double>(doc_count)) + 1.0;
}

std::vector<std::string> tfidf_terms(std::span<const std::string> tokens) {
  std::vector<std::string> terms;
  terms.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (lexicon::is_stopword(t)) continue;
    auto s = lexicon::stem(t);
    if (!s.empty()) terms.push_back(std::move(s));
  }
  return terms;
}

TfidfModel fit_tfidf(std::span<const Document> corpus) {
  if (corpus.empty()) throw DataError("fit_tfidf: empty corpus");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::set<std::string> seen;
    for (const auto& s : doc.sentences) {
      for (auto& term : tfidf_terms(s.tokens)) seen.insert(std::move(term));
    }
    for (const auto& term : seen) ++df[term];
  }
  TfidfModel model;
  model.doc_count = corpus.size();
  const auto n = static_cast<double>(corpus.size());
  std::size_t col = 0;
  for (const auto& [term, count] : df) {
    model.idf.emplace(term, std::log(n / (1.0 + static_cast<double>(count))) + 1.0);
    model.column.emplace(term, col++);
  }
  return model;
}

EmbeddingMatrix encode_tfidf(const Document& doc, const TfidfModel& model) {
  EmbeddingMatrix emb;
  emb.doc_id = doc.id;
  emb.data = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(doc.size()),
                                   static_cast<Eigen::Index>(model.dim()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    bool any = false;
    for (const auto& term : tfidf_terms(doc.sentences[i].tokens)) {
      auto it = model.column.find(term);
      if (it == model.column.end()) continue;
      emb.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(it->second)) +=
          model.idf.at(term);
      any = true;
    }
    if (!any) emb.zero_rows.push_back(i);
  }
  return emb;
}

// ---------------------------------------------------------------------------
// Distributional encoder

std::size_t EncoderParams::row_of(const std::string& token) const {
  auto it = vocab.find(token);
  return it == vocab.end() ? kUnknownRow : it->second;
}

std::vector<std::size_t> EncoderParams::rows_of(std::span<const std::string> toks) const {
  std::vector<std::size_t> rows;
  rows.reserve(toks.size());
  for (const auto& t : toks) rows.push_back(row_of(t));
  return rows;
}

EncoderParams EncoderParams::with_vocabulary(std::span<const Document> corpus, std::size_t dim) {
  EncoderParams p;
  p.tokens.emplace_back(kUnknownToken);
  p.vocab.emplace(kUnknownToken, kUnknownRow);
  for (const auto& doc : corpus) {
    for (const auto& s : doc.sentences) {
      for (const auto& t : s.tokens) {
        if (p.vocab.emplace(t, p.tokens.size()).second) p.tokens.push_back(t);
      }
    }
  }
  const auto rows = static_cast<Eigen::Index>(p.tokens.size());
  p.emb_target = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(dim));
  p.emb_context = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(dim));
  return p;
}

Eigen::VectorXd sentence_vector(const EncoderParams& params, std::span<const std::size_t> rows,
                                Table which) {
  const auto& table = which == Table::kTarget ? params.emb_target : params.emb_context;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(table.cols());
  if (rows.empty()) return v;
  for (auto r : rows) v += table.row(static_cast<Eigen::Index>(r)).transpose();
  return v / static_cast<double>(rows.size());
}

EmbeddingMatrix encode_distributional(const Document& doc, const EncoderParams& params,
                                      Table which) {
  EmbeddingMatrix emb;
  emb.doc_id = doc.id;
  emb.data = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(doc.size()),
                                   static_cast<Eigen::Index>(params.dim()));
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& toks = doc.sentences[i].tokens;
    if (toks.empty()) {
      emb.zero_rows.push_back(i);
      continue;
    }
    const auto rows = params.rows_of(toks);
    emb.data.row(static_cast<Eigen::Index>(i)) = sentence_vector(params, rows, which).transpose();
  }
  return emb;
}

void save_params(std::ostream& out, const EncoderParams& params) {
  out << json{{"format", kParamsFormat}, {"dim", params.dim()}, {"vocab", params.tokens}}.dump()
      << '\n';
  for (std::size_t r = 0; r < params.vocab_size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    out << json{{"target", row_to_vector(params.emb_target, row)},
                {"context", row_to_vector(params.emb_context, row)}}
               .dump()
        << '\n';
  }
}

void save_params(const std::string& path, const EncoderParams& params) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  save_params(out, params);
}

EncoderParams load_params(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("encoder params: empty input");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("encoder params: malformed header: ") + e.what());
  }
  if (!header.is_object() || header.value("format", "") != kParamsFormat) {
    throw DataError("encoder params: unrecognized header");
  }
  const auto dim = header.at("dim").get<std::size_t>();
  EncoderParams p;
  p.tokens = header.at("vocab").get<std::vector<std::string>>();
  if (p.tokens.empty() || p.tokens[0] != EncoderParams::kUnknownToken) {
    throw DataError("encoder params: vocabulary must start with the unknown token");
  }
  for (std::size_t r = 0; r < p.tokens.size(); ++r) p.vocab.emplace(p.tokens[r], r);
  const auto rows = static_cast<Eigen::Index>(p.tokens.size());
  p.emb_target.resize(rows, static_cast<Eigen::Index>(dim));
  p.emb_context.resize(rows, static_cast<Eigen::Index>(dim));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto line_no = static_cast<std::size_t>(r) + 2;
    if (!std::getline(in, line)) {
      throw DataError("encoder params: expected " + std::to_string(rows) + " rows, got " +
                      std::to_string(r));
    }
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError("encoder params: malformed row" + at_line(line_no) + ": " + e.what());
    }
    const auto target = rec.at("target").get<std::vector<double>>();
    const auto context = rec.at("context").get<std::vector<double>>();
    if (target.size() != dim || context.size() != dim) {
      throw DataError("encoder params: row width differs from dim" + at_line(line_no));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      p.emb_target(r, static_cast<Eigen::Index>(c)) = target[c];
      p.emb_context(r, static_cast<Eigen::Index>(c)) = context[c];
    }
  }
  return p;
}

EncoderParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load_params(in);
}

// ---------------------------------------------------------------------------
// Interchange

void write_embeddings(std::ostream& out, const EmbeddingMatrix& emb) {
  json vectors = json::array();
  for (Eigen::Index r = 0; r < emb.data.rows(); ++r) {
    vectors.push_back(row_to_vector(emb.data, r));
  }
  out << json{{"doc_id", emb.doc_id}, {"dim", emb.dim()}, {"vectors", std::move(vectors)}}.dump()
      << '\n';
}

EmbeddingTable read_embeddings(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(nonfinite_literals_to_null(line));
    } catch (const json::parse_error& e) {
      throw DataError("malformed embedding record" + at_line(line_no) + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("doc_id") || !rec["doc_id"].is_string() ||
        !rec.contains("dim") || !rec["dim"].is_number_integer() || !rec.contains("vectors") ||
        !rec["vectors"].is_array()) {
      throw DataError("embedding record" + at_line(line_no) +
                      " must have string doc_id, integer dim and array vectors");
    }
    EmbeddingMatrix emb;
    emb.doc_id = rec["doc_id"].get<std::string>();
    const auto dim = rec["dim"].get<long long>();
    if (dim <= 0) throw DataError("doc " + emb.doc_id + ": dim must be positive");
    const auto& vectors = rec["vectors"];
    emb.data.resize(static_cast<Eigen::Index>(vectors.size()), dim);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      const auto& row = vectors[r];
      if (!row.is_array() || static_cast<long long>(row.size()) != dim) {
        throw DataError("doc " + emb.doc_id + ": row " + std::to_string(r) + " does not have " +
                        std::to_string(dim) + " values");
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        const auto& v = row[c];
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
          throw DataError("doc " + emb.doc_id + ": non-finite value at row " + std::to_string(r) +
                          " col " + std::to_string(c));
        }
        emb.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.get<double>();
      }
    }
    auto id = emb.doc_id;
    if (!table.emplace(std::move(id), std::move(emb)).second) {
      throw DataError("duplicate embedding record for doc " + rec["doc_id"].get<std::string>() +
                      at_line(line_no));
    }
  }
  return table;
}

EmbeddingTable read_embedding_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_embeddings(in);
}

EmbeddingMatrix match_embeddings(const EmbeddingTable& table, const Document& doc) {
  auto it = table.find(doc.id);
  if (it == table.end()) throw DataError("no embeddings for doc " + doc.id);
  if (it->second.rows() != doc.size()) {
    throw DataError("embeddings for doc " + doc.id + " have " + std::to_string(it->second.rows()) +
                    " rows but the document has " + std::to_string(doc.size()) + " sentences");
  }
  return it->second;
}

EmbeddingMatrix load_embeddings(const std::string& path, const Document& doc) {
  return match_embeddings(read_embedding_file(path), doc);
}

}  // namespace centrank
