#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "centrank/corpus.hpp"

namespace centrank {

// Row i is the vector of sentence i.
struct EmbeddingMatrix {
  std::string doc_id;
  Eigen::MatrixXd data;
  // Sentences that had nothing to encode and were given a zero row.
  std::vector<std::size_t> zero_rows;

  std::size_t rows() const { return static_cast<std::size_t>(data.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(data.cols()); }
};

// ---------------------------------------------------------------------------
// tf-idf
// ---------------------------------------------------------------------------

struct TfidfModel {
  std::size_t doc_count = 0;
  // Stemmed, stopword-free terms; std::map keeps the column order stable.
  std::map<std::string, double> idf;
  std::unordered_map<std::string, std::size_t> column;

  std::size_t dim() const { return idf.size(); }
  // idf of a term, treating unseen terms as df = 0.
  double idf_of(const std::string& term) const;
};

// Stopword removal then stemming. This is the term stream tf-idf counts.
std::vector<std::string> tfidf_terms(std::span<const std::string> tokens);

// idf(t) = ln(N / (1 + df(t))) + 1.
TfidfModel fit_tfidf(std::span<const Document> corpus);

EmbeddingMatrix encode_tfidf(const Document& doc, const TfidfModel& model);

// ---------------------------------------------------------------------------
// Trainable distributional encoder
// ---------------------------------------------------------------------------

enum class Table { kTarget, kContext };

// Two token tables of identical shape: emb_target produces the sentence
// vector v, emb_context produces v'. Row 0 is the unknown token.
struct EncoderParams {
  static constexpr std::size_t kUnknownRow = 0;
  static constexpr const char* kUnknownToken = "<unk>";

  std::vector<std::string> tokens;  // row -> token
  std::unordered_map<std::string, std::size_t> vocab;
  Eigen::MatrixXd emb_target;
  Eigen::MatrixXd emb_context;

  std::size_t dim() const { return static_cast<std::size_t>(emb_target.cols()); }
  std::size_t vocab_size() const { return tokens.size(); }
  std::size_t row_of(const std::string& token) const;
  std::vector<std::size_t> rows_of(std::span<const std::string> tokens) const;

  // Vocabulary in first-seen order over the corpus, unknown token first.
  // Matrices are zero-initialized.
  static EncoderParams with_vocabulary(std::span<const Document> corpus, std::size_t dim);
};

// Mean of the selected table's rows over the sentence tokens.
Eigen::VectorXd sentence_vector(const EncoderParams& params, std::span<const std::size_t> rows,
                                Table which);

// Sentence i's row is the mean of its token rows; out-of-vocabulary tokens
// use the unknown row, sentences without tokens get a zero row.
EmbeddingMatrix encode_distributional(const Document& doc, const EncoderParams& params,
                                      Table which);

// Header line {"format","dim","vocab"} then one {"target":[...],"context":[...]}
// line per vocabulary row.
void save_params(std::ostream& out, const EncoderParams& params);
void save_params(const std::string& path, const EncoderParams& params);
EncoderParams load_params(std::istream& in);
EncoderParams load_params(const std::string& path);

// ---------------------------------------------------------------------------
// Embedding interchange: one {"doc_id", "dim", "vectors"} object per line.
// ---------------------------------------------------------------------------

using EmbeddingTable = std::map<std::string, EmbeddingMatrix>;

void write_embeddings(std::ostream& out, const EmbeddingMatrix& emb);
EmbeddingTable read_embeddings(std::istream& in);
EmbeddingTable read_embedding_file(const std::string& path);

// Looks up doc.id and checks the row count against the document.
EmbeddingMatrix match_embeddings(const EmbeddingTable& table, const Document& doc);
EmbeddingMatrix load_embeddings(const std::string& path, const Document& doc);

}  // namespace centrank
