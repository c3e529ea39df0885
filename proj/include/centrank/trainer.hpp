#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "centrank/corpus.hpp"
#include "centrank/encoder.hpp"

namespace centrank {

struct TrainConfig {
  std::size_t dim = 64;
  std::size_t negatives_k = 5;
  double lr = 2.0;
  std::size_t epochs = 10;
  std::size_t batch_size = 20;
  std::uint64_t seed = 1;
};

struct TrainReport {
  // Mean objective over the evaluation instances after each epoch.
  std::vector<double> epoch_objective;
  std::string checksum;
};

// One training example: a target sentence, its neighbours (absent at
// document boundaries) and sampled negatives. Sentences are given as rows
// into the encoder vocabulary.
struct Instance {
  std::optional<std::vector<std::size_t>> prev;
  std::vector<std::size_t> target;
  std::optional<std::vector<std::size_t>> next;
  std::vector<std::vector<std::size_t>> negatives;
};

Instance make_instance(const EncoderParams& params, const Sentence* prev, const Sentence& target,
                       const Sentence* next, std::span<const Sentence> negatives);

//   log σ(v'(prev)·v(s)) + log σ(v'(next)·v(s)) + mean_neg log σ(-v'(neg)·v(s))
// v uses emb_target, v' uses emb_context; a missing neighbour drops its term.
double objective(const Instance& inst, const EncoderParams& params);

double objective(const Sentence* prev, const Sentence& target, const Sentence* next,
                 std::span<const Sentence> negatives, const EncoderParams& params);

// Sparse gradient of the objective: only rows touched by the instance.
struct Gradient {
  std::map<std::size_t, Eigen::VectorXd> target_rows;
  std::map<std::size_t, Eigen::VectorXd> context_rows;
};

Gradient objective_gradient(const Instance& inst, const EncoderParams& params);

// Max relative error between the analytic gradient and central differences
// over every touched coordinate. The relative error uses
// max(|analytic|, |numeric|, 1e-3) as denominator so coordinates with a
// vanishing gradient are compared absolutely. Requires eps in [1e-7, 1e-3].
double grad_check(const EncoderParams& params, const Instance& inst, double eps);

// Stochastic gradient ascent on the objective over every (prev, s, next)
// window of the corpus. Deterministic for a fixed seed.
std::pair<EncoderParams, TrainReport> train(std::span<const Document> corpus,
                                            const TrainConfig& cfg);

// FNV-1a over the vocabulary and both tables, as 16 hex digits.
std::string params_checksum(const EncoderParams& params);

}  // namespace centrank
