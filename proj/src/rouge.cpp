#include "centrank/rouge.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "centrank/error.hpp"

namespace centrank {
namespace {

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

double ngram_total(std::span<const std::string> tokens, std::size_t n) {
  return tokens.size() < n ? 0.0 : static_cast<double>(tokens.size() - n + 1);
}

void accumulate(RougeScore& sum, const RougeScore& s) {
  sum.precision += s.precision;
  sum.recall += s.recall;
  sum.f1 += s.f1;
}

RougeScore divided(RougeScore s, double n) {
  return {s.precision / n, s.recall / n, s.f1 / n};
}

}  // namespace

RougeScore RougeScore::from_counts(double matches, double candidate_total,
                                   double reference_total) {
  RougeScore s;
  s.precision = candidate_total > 0 ? matches / candidate_total : 0.0;
  s.recall = reference_total > 0 ? matches / reference_total : 0.0;
  const double denom = s.precision + s.recall;
  s.f1 = denom > 0 ? 2.0 * s.precision * s.recall / denom : 0.0;
  return s;
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n) {
  if (n == 0) throw ConfigError("rouge_n: n must be at least 1");
  const auto cand = count_ngrams(candidate, n);
  const auto ref = count_ngrams(reference, n);
  std::size_t matches = 0;
  for (const auto& [gram, count] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) matches += std::min(count, it->second);
  }
  return RougeScore::from_counts(static_cast<double>(matches), ngram_total(candidate, n),
                                 ngram_total(reference, n));
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  return RougeScore::from_counts(static_cast<double>(lcs_length(candidate, reference)),
                                 static_cast<double>(candidate.size()),
                                 static_cast<double>(reference.size()));
}

EvalReport evaluate(std::span<const Summary> summaries,
                    const std::map<std::string, std::string>& refs) {
  EvalReport report;
  for (const auto& summary : summaries) {
    auto it = refs.find(summary.doc_id);
    if (it == refs.end()) throw DataError("no reference for doc_id " + summary.doc_id);
    const auto cand = tokenize(summary.text);
    const auto ref = tokenize(it->second);
    accumulate(report.rouge1, rouge_n(cand, ref, 1));
    accumulate(report.rouge2, rouge_n(cand, ref, 2));
    accumulate(report.rougeL, rouge_l(cand, ref));
    ++report.doc_count;
  }
  if (report.doc_count > 0) {
    const auto n = static_cast<double>(report.doc_count);
    report.rouge1 = divided(report.rouge1, n);
    report.rouge2 = divided(report.rouge2, n);
    report.rougeL = divided(report.rougeL, n);
  }
  return report;
}

std::map<std::string, std::string> references_of(std::span<const Document> docs) {
  std::map<std::string, std::string> refs;
  for (const auto& d : docs) {
    if (d.reference) refs.emplace(d.id, *d.reference);
  }
  return refs;
}

std::string format_report(const EvalReport& report, const std::string& label) {
  char buf[160];
  std::string out;
  std::snprintf(buf, sizeof(buf), "%-20s %6s %6s %6s\n", "Method", "R-1", "R-2", "R-L");
  out += buf;
  std::snprintf(buf, sizeof(buf), "%-20s %6.1f %6.1f %6.1f\n", label.c_str(),
                100.0 * report.rouge1.f1, 100.0 * report.rouge2.f1, 100.0 * report.rougeL.f1);
  out += buf;
  return out;
}

nlohmann::json report_json(const EvalReport& report) {
  auto variant = [](const RougeScore& s) {
    return nlohmann::json{{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
  };
  return {{"docs", report.doc_count},
          {"rouge-1", variant(report.rouge1)},
          {"rouge-2", variant(report.rouge2)},
          {"rouge-l", variant(report.rougeL)}};
}

}  // namespace centrank
