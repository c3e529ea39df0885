#include "centrank/selector.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "centrank/error.hpp"
#include "centrank/rouge.hpp"

namespace centrank {

Summary make_summary(const Document& doc, std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  Summary s;
  s.doc_id = doc.id;
  for (auto i : indices) {
    if (!s.text.empty()) s.text += ' ';
    s.text += doc.sentences.at(i).text;
  }
  s.indices = std::move(indices);
  return s;
}

Summary select_topk(const Document& doc, std::span<const double> scores, std::size_t k) {
  if (scores.size() != doc.size()) {
    throw DataError("select_topk: doc " + doc.id + " has " + std::to_string(doc.size()) +
                    " sentences but " + std::to_string(scores.size()) + " scores");
  }
  if (k == 0) throw ConfigError("select_topk: k must be at least 1");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  return make_summary(doc, std::move(order));
}

Summary lead(const Document& doc, std::size_t k) {
  if (k == 0) throw ConfigError("lead: k must be at least 1");
  std::vector<std::size_t> indices(std::min(k, doc.size()));
  std::iota(indices.begin(), indices.end(), 0);
  return make_summary(doc, std::move(indices));
}

double oracle_objective(const Document& doc, std::span<const std::size_t> indices,
                        std::span<const std::string> reference_tokens) {
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> cand;
  for (auto i : sorted) {
    const auto& t = doc.sentences.at(i).tokens;
    cand.insert(cand.end(), t.begin(), t.end());
  }
  return 0.5 * (rouge_n(cand, reference_tokens, 1).f1 + rouge_n(cand, reference_tokens, 2).f1);
}

OracleResult oracle(const Document& doc, const std::string& reference, std::size_t max_sents) {
  if (max_sents == 0) throw ConfigError("oracle: max_sents must be at least 1");
  const auto ref_tokens = tokenize(reference);
  if (ref_tokens.empty()) throw DataError("oracle: empty reference for doc " + doc.id);

  OracleResult result;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(doc.size(), false);
  double current = 0.0;
  while (chosen.size() < max_sents) {
    double best = current;
    std::size_t best_index = doc.size();
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (used[i]) continue;
      chosen.push_back(i);
      const double value = oracle_objective(doc, chosen, ref_tokens);
      chosen.pop_back();
      if (value > best) {
        best = value;
        best_index = i;
      }
    }
    if (best_index == doc.size()) break;
    chosen.push_back(best_index);
    used[best_index] = true;
    current = best;
    result.picks.push_back(best_index);
    result.trajectory.push_back(current);
  }
  if (chosen.empty()) {
    chosen.push_back(0);
    result.picks.push_back(0);
    result.zero_overlap = true;
    result.trajectory.push_back(0.0);
  }
  result.summary = make_summary(doc, std::move(chosen));
  return result;
}

void write_summaries(std::ostream& out, std::span<const Summary> summaries) {
  for (const auto& s : summaries) {
    out << nlohmann::json{{"doc_id", s.doc_id}, {"indices", s.indices}, {"text", s.text}}.dump()
        << '\n';
  }
}

std::vector<Summary> read_summaries(std::istream& in) {
  std::vector<Summary> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      Summary s;
      s.doc_id = rec.at("doc_id").get<std::string>();
      s.indices = rec.at("indices").get<std::vector<std::size_t>>();
      s.text = rec.at("text").get<std::string>();
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed summary record at line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return out;
}

std::vector<Summary> load_summaries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_summaries(in);
}

}  // namespace centrank
