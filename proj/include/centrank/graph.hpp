#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "centrank/encoder.hpp"

namespace centrank {

struct SimilarityMatrix {
  Eigen::MatrixXd raw;         // pairwise dot products
  Eigen::MatrixXd normalized;  // thresholded, non-negative, zero diagonal
  double beta = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(raw.rows()); }
};

struct CentralityConfig {
  double lambda1 = -2.0;  // weight of edges to earlier sentences
  double lambda2 = 1.0;   // weight of edges to later sentences
  double beta = 0.6;
  std::size_t k = 3;
};

// raw(i, j) = v_i · v_j, computed once per unordered pair so the result is
// exactly symmetric.
Eigen::MatrixXd dot_similarity(const Eigen::MatrixXd& vectors);

// Shifts the off-diagonal entries by min + beta * (max - min) and keeps only
// strictly positive values. min and max range over off-diagonal entries.
SimilarityMatrix normalize_similarity(Eigen::MatrixXd raw, double beta);

SimilarityMatrix similarity(const EmbeddingMatrix& emb, double beta);

// score_i = sum over j != i of E_ij, accumulated as (sum j<i) + (sum j>i).
std::vector<double> degree_centrality(const SimilarityMatrix& sim);

// score_i = lambda1 * (sum j<i of E_ij) + lambda2 * (sum j>i of E_ij).
std::vector<double> directed_centrality(const SimilarityMatrix& sim, double lambda1,
                                        double lambda2);

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

inline constexpr double kDefaultDamping = 0.85;
inline constexpr double kDefaultTolerance = 1e-8;
inline constexpr std::size_t kDefaultMaxIterations = 100;

// Power iteration over the row-normalized weights with uniform teleport.
// All-zero rows spread their mass uniformly. Stops when the L1 change drops
// below tol. `initial` (uniform when empty) is normalized to sum 1.
PageRankResult pagerank(const SimilarityMatrix& sim, double damping = kDefaultDamping,
                        double tol = kDefaultTolerance,
                        std::size_t max_iter = kDefaultMaxIterations,
                        std::span<const double> initial = {});

// Normalized matrix as CSV, row-major, 9 significant digits.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace centrank
