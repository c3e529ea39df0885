#include "centrank/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "centrank/error.hpp"

namespace centrank {

Eigen::MatrixXd dot_similarity(const Eigen::MatrixXd& vectors) {
  const auto n = vectors.rows();
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      raw(i, j) = raw(j, i) = vectors.row(i).dot(vectors.row(j));
    }
  }
  return raw;
}

SimilarityMatrix normalize_similarity(Eigen::MatrixXd raw, double beta) {
  if (raw.rows() == 0) throw DataError("similarity: empty document");
  if (raw.rows() != raw.cols()) throw DataError("similarity: raw matrix is not square");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("similarity: beta must lie in [0, 1]");

  const auto n = raw.rows();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      lo = std::min(lo, raw(i, j));
      hi = std::max(hi, raw(i, j));
    }
  }

  SimilarityMatrix sim;
  sim.beta = beta;
  sim.normalized = Eigen::MatrixXd::Zero(n, n);
  if (n > 1) {
    // beta == 1 pins the threshold to the maximum so no entry survives
    // rounding in min + (max - min).
    const double threshold = beta >= 1.0 ? hi : lo + beta * (hi - lo);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        const double shifted = raw(i, j) - threshold;
        if (shifted > 0.0) sim.normalized(i, j) = shifted;
      }
    }
  }
  sim.raw = std::move(raw);
  return sim;
}

SimilarityMatrix similarity(const EmbeddingMatrix& emb, double beta) {
  if (emb.rows() == 0) throw DataError("similarity: document " + emb.doc_id + " has no rows");
  return normalize_similarity(dot_similarity(emb.data), beta);
}

namespace {

struct SplitSums {
  std::vector<double> before;
  std::vector<double> after;
};

SplitSums split_sums(const SimilarityMatrix& sim) {
  const auto n = static_cast<Eigen::Index>(sim.size());
  SplitSums s{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (Eigen::Index i = 0; i < n; ++i) {
    double before = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) before += sim.normalized(i, j);
    double after = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) after += sim.normalized(i, j);
    s.before[i] = before;
    s.after[i] = after;
  }
  return s;
}

}  // namespace

std::vector<double> degree_centrality(const SimilarityMatrix& sim) {
  auto s = split_sums(sim);
  std::vector<double> scores(s.before.size());
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = s.before[i] + s.after[i];
  return scores;
}

std::vector<double> directed_centrality(const SimilarityMatrix& sim, double lambda1,
                                        double lambda2) {
  auto s = split_sums(sim);
  std::vector<double> scores(s.before.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    scores[i] = lambda1 * s.before[i] + lambda2 * s.after[i];
  }
  return scores;
}

PageRankResult pagerank(const SimilarityMatrix& sim, double damping, double tol,
                        std::size_t max_iter, std::span<const double> initial) {
  const auto n = static_cast<Eigen::Index>(sim.size());
  if (n == 0) throw DataError("pagerank: empty graph");
  if (!(damping > 0.0 && damping < 1.0)) throw ConfigError("pagerank: damping must lie in (0, 1)");

  const Eigen::MatrixXd& w = sim.normalized;
  const Eigen::VectorXd out_weight = w.rowwise().sum();
  const double uniform = 1.0 / static_cast<double>(n);

  Eigen::VectorXd rank = Eigen::VectorXd::Constant(n, uniform);
  if (!initial.empty()) {
    if (initial.size() != sim.size()) throw DataError("pagerank: initial vector size mismatch");
    for (Eigen::Index i = 0; i < n; ++i) rank(i) = initial[static_cast<std::size_t>(i)];
    if (!(rank.minCoeff() >= 0.0) || !(rank.sum() > 0.0)) {
      throw DataError("pagerank: initial vector must be non-negative with positive mass");
    }
    rank /= rank.sum();
  }
  PageRankResult result;
  // Sweeps update the rank vector in place (Gauss-Seidel order). The fixed
  // point is the same as plain power iteration, but periodic components such
  // as bipartite subgraphs no longer oscillate at the damping rate.
  const Eigen::MatrixXd wt = w.transpose();
  for (std::size_t it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd previous = rank;
    double dangling = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(out_weight(j) > 0.0)) dangling += rank(j);
    }
    const double base = (1.0 - damping) * uniform + damping * dangling * uniform;
    for (Eigen::Index i = 0; i < n; ++i) {
      double inflow = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (wt(i, j) != 0.0) inflow += rank(j) * wt(i, j) / out_weight(j);
      }
      rank(i) = base + damping * inflow;
    }
    rank /= rank.sum();
    const double change = (rank - previous).lpNorm<1>();
    result.iterations = it + 1;
    if (change < tol) {
      result.converged = true;
      break;
    }
  }
  result.scores.assign(rank.data(), rank.data() + n);
  return result;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.9g", m(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace centrank
