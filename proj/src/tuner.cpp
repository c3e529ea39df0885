#include "centrank/tuner.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "centrank/error.hpp"
#include "centrank/parallel.hpp"
#include "centrank/rouge.hpp"
#include "centrank/selector.hpp"

namespace centrank {
namespace {

void check_alignment(std::span<const Document> docs, std::span<const EmbeddingMatrix> embeddings) {
  if (embeddings.size() < docs.size()) {
    throw DataError("tune: " + std::to_string(docs.size()) + " documents but only " +
                    std::to_string(embeddings.size()) + " embedding matrices");
  }
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!docs[d].reference) throw DataError("tune: doc " + docs[d].id + " has no reference");
    if (embeddings[d].doc_id != docs[d].id || embeddings[d].rows() != docs[d].size()) {
      throw DataError("tune: embeddings do not match doc " + docs[d].id);
    }
  }
}

double summary_rouge1(const Summary& s, std::span<const std::string> ref_tokens) {
  return rouge_n(tokenize(s.text), ref_tokens, 1).f1;
}

// True when `a` should win a score tie against `b`.
bool preferred(const SurfacePoint& a, const SurfacePoint& b) {
  const double spread_a = a.lambda2 - a.lambda1;
  const double spread_b = b.lambda2 - b.lambda1;
  if (spread_a != spread_b) return spread_a > spread_b;
  return a.beta < b.beta;
}

}  // namespace

double mean_rouge1(std::span<const Document> docs, std::span<const EmbeddingMatrix> embeddings,
                   const CentralityConfig& cfg) {
  check_alignment(docs, embeddings);
  if (docs.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto sim = similarity(embeddings[d], cfg.beta);
    const auto scores = directed_centrality(sim, cfg.lambda1, cfg.lambda2);
    sum += summary_rouge1(select_topk(docs[d], scores, cfg.k), tokenize(*docs[d].reference));
  }
  return sum / static_cast<double>(docs.size());
}

TuneResult tune(std::span<const Document> validation, std::span<const EmbeddingMatrix> embeddings,
                const TuneSpec& spec) {
  if (spec.lambda1_grid.empty() || spec.beta_grid.empty()) {
    throw ConfigError("tune: grids must be non-empty");
  }
  if (spec.max_docs == 0) throw ConfigError("tune: max_docs must be at least 1");
  if (spec.k == 0) throw ConfigError("tune: k must be at least 1");
  for (double b : spec.beta_grid) {
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("tune: beta values must lie in [0, 1]");
  }
  const auto docs = validation.first(std::min(spec.max_docs, validation.size()));
  if (docs.empty()) throw DataError("tune: empty validation set");
  check_alignment(docs, embeddings);

  std::vector<std::vector<std::string>> ref_tokens(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) ref_tokens[d] = tokenize(*docs[d].reference);

  const std::size_t n_lambda = spec.lambda1_grid.size();
  TuneResult result;
  for (double beta : spec.beta_grid) {
    // per_doc[d][l]: ROUGE-1 F1 of doc d under lambda1_grid[l].
    std::vector<std::vector<double>> per_doc(docs.size(), std::vector<double>(n_lambda));
    parallel_for(docs.size(), spec.jobs, [&](std::size_t d) {
      const auto sim = similarity(embeddings[d], beta);
      for (std::size_t l = 0; l < n_lambda; ++l) {
        const double l1 = spec.lambda1_grid[l];
        const auto scores = directed_centrality(sim, l1, spec.lambda2_for(l1));
        per_doc[d][l] = summary_rouge1(select_topk(docs[d], scores, spec.k), ref_tokens[d]);
      }
    });
    for (std::size_t l = 0; l < n_lambda; ++l) {
      double sum = 0.0;
      for (std::size_t d = 0; d < docs.size(); ++d) sum += per_doc[d][l];
      const double l1 = spec.lambda1_grid[l];
      result.surface.push_back(
          {l1, spec.lambda2_for(l1), beta, sum / static_cast<double>(docs.size())});
    }
  }

  const SurfacePoint* best = &result.surface.front();
  for (const auto& p : result.surface) {
    if (p.score > best->score || (p.score == best->score && preferred(p, *best))) best = &p;
  }
  result.best = {best->lambda1, best->lambda2, best->beta, spec.k};
  result.best_score = best->score;
  return result;
}

std::vector<SurfacePoint> sweep_plot_data(const TuneResult& result) {
  if (result.surface.empty()) throw DataError("sweep_plot_data: empty surface");
  auto rows = result.surface;
  std::stable_sort(rows.begin(), rows.end(), [](const SurfacePoint& a, const SurfacePoint& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    return a.lambda1 < b.lambda1;
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SurfacePoint> rows) {
  out << "beta,lambda1,lambda2,rouge1_f1\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.beta, r.lambda1, r.lambda2,
                  r.score);
    out << buf;
  }
}

nlohmann::json tune_result_json(const TuneResult& result) {
  nlohmann::json surface = nlohmann::json::array();
  for (const auto& p : result.surface) {
    surface.push_back(
        {{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"beta", p.beta}, {"rouge1_f1", p.score}});
  }
  return {{"best",
           {{"lambda1", result.best.lambda1},
            {"lambda2", result.best.lambda2},
            {"beta", result.best.beta},
            {"k", result.best.k}}},
          {"best_score", result.best_score},
          {"surface", std::move(surface)}};
}

}  // namespace centrank
