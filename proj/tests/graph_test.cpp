#include "centrank/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "centrank/error.hpp"

using namespace centrank;

namespace {

Eigen::MatrixXd sym3(double a01, double a02, double a12, double diag = 1.0) {
  Eigen::MatrixXd m(3, 3);
  m << diag, a01, a02, a01, diag, a12, a02, a12, diag;
  return m;
}

SimilarityMatrix from_normalized(Eigen::MatrixXd e) {
  SimilarityMatrix s;
  s.raw = e;
  s.normalized = std::move(e);
  return s;
}

EmbeddingMatrix random_embedding(std::mt19937_64& gen, std::size_t n, std::size_t d) {
  std::normal_distribution<double> nd;
  EmbeddingMatrix emb;
  emb.doc_id = "rand";
  emb.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < emb.data.size(); ++i) emb.data.data()[i] = nd(gen);
  return emb;
}

std::vector<std::size_t> argsort_desc(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace

TEST(Similarity, BetaOneZeroesEverything) {
  auto sim = normalize_similarity(sym3(0.9, 0.5, 0.1), 1.0);
  EXPECT_EQ(sim.normalized, Eigen::MatrixXd::Zero(3, 3));
}

TEST(Similarity, BetaZeroShiftsByMinimum) {
  auto sim = normalize_similarity(sym3(0.9, 0.5, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(sim.normalized(0, 1), 0.9 - 0.1);
  EXPECT_DOUBLE_EQ(sim.normalized(0, 2), 0.5 - 0.1);
  EXPECT_EQ(sim.normalized(1, 2), 0.0);
  EXPECT_EQ(sim.normalized.diagonal(), Eigen::VectorXd::Zero(3));
}

TEST(Similarity, HandEvaluatedThreshold) {
  // threshold = 0.1 + 0.5 * (0.9 - 0.1) = 0.5
  auto sim = normalize_similarity(sym3(0.9, 0.5, 0.1), 0.5);
  EXPECT_NEAR(sim.normalized(0, 1), 0.4, 1e-15);
  EXPECT_NEAR(sim.normalized(1, 0), 0.4, 1e-15);
  EXPECT_EQ(sim.normalized(0, 2), 0.0);
  EXPECT_EQ(sim.normalized(1, 2), 0.0);
}

TEST(Similarity, DiagonalIgnoredForMinMax) {
  // Large self-similarity must not move the threshold.
  auto a = normalize_similarity(sym3(0.9, 0.5, 0.1, 1.0), 0.5);
  auto b = normalize_similarity(sym3(0.9, 0.5, 0.1, 50.0), 0.5);
  EXPECT_EQ(a.normalized, b.normalized);
}

TEST(Similarity, DotProductsFromEmbeddings) {
  EmbeddingMatrix emb{"d", Eigen::MatrixXd(2, 2), {}};
  emb.data << 1, 2, 3, 4;
  auto sim = similarity(emb, 0.0);
  EXPECT_DOUBLE_EQ(sim.raw(0, 1), 11.0);
  EXPECT_DOUBLE_EQ(sim.raw(0, 0), 5.0);
  EXPECT_EQ(sim.normalized, Eigen::MatrixXd::Zero(2, 2));  // single pair maps to 0
}

TEST(Similarity, Errors) {
  EmbeddingMatrix empty{"e", Eigen::MatrixXd(0, 3), {}};
  EXPECT_THROW(similarity(empty, 0.5), DataError);
  EXPECT_THROW(normalize_similarity(sym3(1, 1, 1), 1.5), ConfigError);
}

TEST(Similarity, SingleSentence) {
  EmbeddingMatrix one{"s", Eigen::MatrixXd::Ones(1, 4), {}};
  auto sim = similarity(one, 0.3);
  EXPECT_EQ(sim.normalized(0, 0), 0.0);
  EXPECT_EQ(degree_centrality(sim), std::vector<double>{0.0});
}

TEST(Similarity, SparsityNonIncreasingInBeta) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto raw = dot_similarity(random_embedding(gen, 3 + trial % 15, 5).data);
    long previous = -1;
    for (int step = 0; step <= 10; ++step) {
      auto sim = normalize_similarity(raw, step / 10.0);
      const long nonzero = (sim.normalized.array() > 0.0).count();
      if (previous >= 0) EXPECT_LE(nonzero, previous);
      previous = nonzero;
      EXPECT_GE(sim.normalized.minCoeff(), 0.0);
    }
  }
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree_centrality(from_normalized(Eigen::MatrixXd::Zero(3, 3))),
            (std::vector<double>{0, 0, 0}));
  auto e = sym3(0.4, 0.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(degree_centrality(from_normalized(e))[0], 0.4);
}

TEST(Directed, HandEvaluated) {
  auto e = sym3(2.0, 0.0, 1.0, 0.0);
  EXPECT_EQ(directed_centrality(from_normalized(e), -2.0, 1.0), (std::vector<double>{2, -3, -2}));
  EXPECT_EQ(directed_centrality(from_normalized(e), 0.0, 0.0), (std::vector<double>{0, 0, 0}));
}

TEST(Directed, ReducesToDegreeBitwise) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto sim = similarity(random_embedding(gen, 1 + trial % 20, 6), (trial % 11) / 10.0);
    EXPECT_EQ(directed_centrality(sim, 1.0, 1.0), degree_centrality(sim));
  }
}

TEST(Directed, LinearInLambdas) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    auto sim = similarity(random_embedding(gen, 2 + trial % 12, 4), 0.2);
    const double l1 = u(gen), l2 = u(gen);
    const auto back = directed_centrality(sim, 1.0, 0.0);
    const auto fwd = directed_centrality(sim, 0.0, 1.0);
    const auto both = directed_centrality(sim, l1, l2);
    for (std::size_t i = 0; i < both.size(); ++i) {
      EXPECT_NEAR(both[i], l1 * back[i] + l2 * fwd[i], 1e-12 * (1 + std::abs(both[i])));
    }
  }
}

TEST(Centrality, RankingInvariantToRawScale) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto raw = dot_similarity(random_embedding(gen, 3 + trial % 15, 8).data);
    const double beta = (trial % 10) / 10.0;
    const auto base = normalize_similarity(raw, beta);
    for (double c : {0.01, 100.0}) {
      const auto scaled = normalize_similarity(raw * c, beta);
      EXPECT_EQ(argsort_desc(degree_centrality(scaled)), argsort_desc(degree_centrality(base)));
      EXPECT_EQ(argsort_desc(directed_centrality(scaled, -2, 1)),
                argsort_desc(directed_centrality(base, -2, 1)));
    }
  }
}

TEST(PageRank, UniformCompleteGraph) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Ones(4, 4);
  e.diagonal().setZero();
  auto pr = pagerank(from_normalized(e));
  ASSERT_TRUE(pr.converged);
  for (double s : pr.scores) EXPECT_NEAR(s, 0.25, 1e-8);
}

TEST(PageRank, AllDanglingIsUniform) {
  auto pr = pagerank(from_normalized(Eigen::MatrixXd::Zero(5, 5)));
  EXPECT_TRUE(pr.converged);
  for (double s : pr.scores) EXPECT_NEAR(s, 0.2, 1e-12);
}

TEST(PageRank, TwoNodes) {
  Eigen::MatrixXd e(2, 2);
  e << 0, 0.7, 0.7, 0;
  auto pr = pagerank(from_normalized(e));
  EXPECT_NEAR(pr.scores[0], 0.5, 1e-8);
  EXPECT_NEAR(pr.scores[1], 0.5, 1e-8);
}

TEST(PageRank, StochasticAndInitIndependent) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto sim = similarity(random_embedding(gen, 2 + trial, 6), 0.3);
    auto a = pagerank(sim);
    std::vector<double> init(sim.size());
    for (auto& x : init) x = u(gen) + 1e-3;
    auto b = pagerank(sim, kDefaultDamping, kDefaultTolerance, kDefaultMaxIterations, init);
    ASSERT_TRUE(a.converged);
    ASSERT_TRUE(b.converged);
    EXPECT_NEAR(std::accumulate(a.scores.begin(), a.scores.end(), 0.0), 1.0, 1e-9);
    for (std::size_t i = 0; i < a.scores.size(); ++i) {
      EXPECT_GE(a.scores[i], 0.0);
      EXPECT_NEAR(a.scores[i], b.scores[i], 1e-7);
    }
  }
}

TEST(PageRank, MatchesDirectSolveIncludingBipartite) {
  // Path 0-1-2 is bipartite; with dangling node 3 added.
  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(4, 4);
  path(0, 1) = path(1, 0) = 2.0;
  path(1, 2) = path(2, 1) = 1.0;
  std::mt19937_64 gen(9);
  std::vector<SimilarityMatrix> graphs{from_normalized(path)};
  for (int t = 0; t < 10; ++t) graphs.push_back(similarity(random_embedding(gen, 3 + t, 4), 0.0));
  for (const auto& sim : graphs) {
    const auto n = static_cast<Eigen::Index>(sim.size());
    const double d = kDefaultDamping;
    // Dense Google matrix: rows stochastic, dangling rows uniform.
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double out = sim.normalized.row(i).sum();
      g.row(i) = out > 0.0 ? Eigen::RowVectorXd(sim.normalized.row(i) / out)
                           : Eigen::RowVectorXd::Constant(n, 1.0 / n);
    }
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - d * g.transpose();
    const Eigen::VectorXd want =
        a.partialPivLu().solve(Eigen::VectorXd::Constant(n, (1.0 - d) / n));
    const auto got = pagerank(sim);
    ASSERT_TRUE(got.converged);
    EXPECT_LE(got.iterations, kDefaultMaxIterations);
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(got.scores[i], want(i), 1e-7);
  }
}

TEST(PageRank, Errors) {
  SimilarityMatrix empty;
  EXPECT_THROW(pagerank(empty), DataError);
  EXPECT_THROW(pagerank(from_normalized(Eigen::MatrixXd::Zero(2, 2)), 1.0), ConfigError);
}

TEST(MatrixCsv, NineSignificantDigits) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1.0 / 3.0, 123456789.123, 0.5;
  std::ostringstream out;
  write_matrix_csv(out, m);
  EXPECT_EQ(out.str(), "0,0.333333333\n123456789,0.5\n");
}
