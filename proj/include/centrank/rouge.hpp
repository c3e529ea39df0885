#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "centrank/selector.hpp"

namespace centrank {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from_counts(double matches, double candidate_total, double reference_total);
};

// Clipped n-gram overlap. Empty denominators score 0.
RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// Summary-level LCS over the flattened token sequences.
RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

struct EvalReport {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rougeL;
  std::size_t doc_count = 0;
};

// Scores each summary against refs[doc_id] (both tokenized with the shared
// tokenizer) and averages per-document precision, recall and F1.
EvalReport evaluate(std::span<const Summary> summaries,
                    const std::map<std::string, std::string>& refs);

// References keyed by id, taken from documents that have one.
std::map<std::string, std::string> references_of(std::span<const Document> docs);

// F1 in percent with one decimal, R-1 / R-2 / R-L columns.
std::string format_report(const EvalReport& report, const std::string& label = "system");
nlohmann::json report_json(const EvalReport& report);

}  // namespace centrank
