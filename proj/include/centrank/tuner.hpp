#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "centrank/corpus.hpp"
#include "centrank/encoder.hpp"
#include "centrank/graph.hpp"

namespace centrank {

enum class LambdaMode {
  kFixed,    // lambda2 held at fixed_lambda2
  kSimplex,  // lambda2 = 1 - lambda1
};

struct TuneSpec {
  std::vector<double> lambda1_grid{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0};
  LambdaMode mode = LambdaMode::kFixed;
  double fixed_lambda2 = 1.0;
  std::vector<double> beta_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t k = 3;
  std::size_t max_docs = 1000;
  std::size_t jobs = 1;

  double lambda2_for(double lambda1) const {
    return mode == LambdaMode::kSimplex ? 1.0 - lambda1 : fixed_lambda2;
  }
};

struct SurfacePoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double beta = 0.0;
  double score = 0.0;  // mean ROUGE-1 F1
};

struct TuneResult {
  CentralityConfig best;
  double best_score = 0.0;
  std::vector<SurfacePoint> surface;
};

// Mean ROUGE-1 F1 of directed-centrality top-k extracts over the documents.
// This is the tuner's inner loop, exposed for consistency checks.
double mean_rouge1(std::span<const Document> docs, std::span<const EmbeddingMatrix> embeddings,
                   const CentralityConfig& cfg);

// Exhaustive grid search over (lambda1, lambda2, beta). embeddings[i] belongs
// to validation[i]. Only the first spec.max_docs documents are used. Ties
// on the score go to larger lambda2 - lambda1, then smaller beta.
TuneResult tune(std::span<const Document> validation, std::span<const EmbeddingMatrix> embeddings,
                const TuneSpec& spec);

// Surface rows ordered by beta, then lambda1.
std::vector<SurfacePoint> sweep_plot_data(const TuneResult& result);

// CSV with header beta,lambda1,lambda2,rouge1_f1.
void write_sweep_csv(std::ostream& out, std::span<const SurfacePoint> rows);

nlohmann::json tune_result_json(const TuneResult& result);

}  // namespace centrank
