#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "centrank/corpus.hpp"

namespace centrank {

struct Summary {
  std::string doc_id;
  std::vector<std::size_t> indices;  // strictly increasing
  std::string text;                  // selected sentences joined by a space
};

Summary make_summary(const Document& doc, std::vector<std::size_t> indices);

// Top-k by score, ties toward the earlier sentence, returned in document order.
Summary select_topk(const Document& doc, std::span<const double> scores, std::size_t k);

Summary lead(const Document& doc, std::size_t k);

struct OracleResult {
  Summary summary;
  // Sentence indices in the order the greedy loop picked them.
  std::vector<std::size_t> picks;
  // Objective after each greedy pick; non-decreasing.
  std::vector<double> trajectory;
  // No sentence shares a unigram or bigram with the reference; the earliest
  // sentence is returned.
  bool zero_overlap = false;
};

// Mean of ROUGE-1 and ROUGE-2 F1 of the selection (in document order)
// against the reference tokens.
double oracle_objective(const Document& doc, std::span<const std::size_t> indices,
                        std::span<const std::string> reference_tokens);

// Greedy forward selection on oracle_objective; stops when no addition
// strictly improves it or max_sents is reached.
OracleResult oracle(const Document& doc, const std::string& reference, std::size_t max_sents);

// {"doc_id", "indices", "text"} per line.
void write_summaries(std::ostream& out, std::span<const Summary> summaries);
std::vector<Summary> read_summaries(std::istream& in);
std::vector<Summary> load_summaries(const std::string& path);

}  // namespace centrank
