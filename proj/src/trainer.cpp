#include "centrank/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "centrank/error.hpp"

namespace centrank {
namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

std::vector<std::size_t> rows_or_empty(const EncoderParams& params, const Sentence* s) {
  return s == nullptr ? std::vector<std::size_t>{} : params.rows_of(s->tokens);
}

// Adds `grad` (w.r.t. a mean-pooled sentence vector) to every pooled row.
void scatter(std::map<std::size_t, Eigen::VectorXd>& rows, std::span<const std::size_t> sentence,
             const Eigen::VectorXd& grad) {
  if (sentence.empty()) return;
  const Eigen::VectorXd share = grad / static_cast<double>(sentence.size());
  for (auto r : sentence) {
    auto [it, inserted] = rows.try_emplace(r, share);
    if (!inserted) it->second += share;
  }
}

struct Window {
  std::size_t sentence;  // global index
  std::optional<std::size_t> prev;
  std::optional<std::size_t> next;
};

class NegativeSampler {
 public:
  NegativeSampler(const std::vector<std::vector<std::size_t>>& sentences, std::mt19937_64& gen)
      : sentences_(sentences), gen_(gen), pick_(0, sentences.size() - 1) {}

  // Uniform over non-empty corpus sentences other than the window's own three.
  std::vector<std::vector<std::size_t>> draw(const Window& w, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    out.reserve(k);
    while (out.size() < k) {
      const auto g = pick_(gen_);
      if (g == w.sentence || (w.prev && g == *w.prev) || (w.next && g == *w.next)) continue;
      if (sentences_[g].empty()) continue;
      out.push_back(sentences_[g]);
    }
    return out;
  }

 private:
  const std::vector<std::vector<std::size_t>>& sentences_;
  std::mt19937_64& gen_;
  std::uniform_int_distribution<std::size_t> pick_;
};

Instance window_instance(const Window& w, const std::vector<std::vector<std::size_t>>& sentences,
                         std::vector<std::vector<std::size_t>> negatives) {
  Instance inst;
  inst.target = sentences[w.sentence];
  if (w.prev) inst.prev = sentences[*w.prev];
  if (w.next) inst.next = sentences[*w.next];
  inst.negatives = std::move(negatives);
  return inst;
}

void validate(const TrainConfig& cfg) {
  if (cfg.dim == 0) throw ConfigError("train: dim must be positive");
  if (cfg.negatives_k == 0) throw ConfigError("train: negatives_k must be at least 1");
  if (!(cfg.lr > 0) || !std::isfinite(cfg.lr)) throw ConfigError("train: lr must be positive");
  if (cfg.epochs == 0) throw ConfigError("train: epochs must be at least 1");
  if (cfg.batch_size == 0) throw ConfigError("train: batch_size must be at least 1");
}

}  // namespace

Instance make_instance(const EncoderParams& params, const Sentence* prev, const Sentence& target,
                       const Sentence* next, std::span<const Sentence> negatives) {
  Instance inst;
  inst.target = params.rows_of(target.tokens);
  if (prev) inst.prev = rows_or_empty(params, prev);
  if (next) inst.next = rows_or_empty(params, next);
  for (const auto& s : negatives) inst.negatives.push_back(params.rows_of(s.tokens));
  return inst;
}

double objective(const Instance& inst, const EncoderParams& params) {
  const Eigen::VectorXd v = sentence_vector(params, inst.target, Table::kTarget);
  double total = 0.0;
  for (const auto* neighbour : {&inst.prev, &inst.next}) {
    if (!neighbour->has_value()) continue;
    total += log_sigmoid(sentence_vector(params, **neighbour, Table::kContext).dot(v));
  }
  if (!inst.negatives.empty()) {
    double neg = 0.0;
    for (const auto& n : inst.negatives) {
      neg += log_sigmoid(-sentence_vector(params, n, Table::kContext).dot(v));
    }
    total += neg / static_cast<double>(inst.negatives.size());
  }
  return total;
}

double objective(const Sentence* prev, const Sentence& target, const Sentence* next,
                 std::span<const Sentence> negatives, const EncoderParams& params) {
  return objective(make_instance(params, prev, target, next, negatives), params);
}

Gradient objective_gradient(const Instance& inst, const EncoderParams& params) {
  Gradient g;
  const Eigen::VectorXd v = sentence_vector(params, inst.target, Table::kTarget);
  Eigen::VectorXd dv = Eigen::VectorXd::Zero(v.size());

  // d/dx log σ(x) = σ(-x); d/dx (1/k) log σ(-x) = -σ(x)/k.
  auto contribute = [&](std::span<const std::size_t> ctx, double coef_of_dot, bool positive) {
    const Eigen::VectorXd c = sentence_vector(params, ctx, Table::kContext);
    const double x = c.dot(v);
    const double coef = positive ? sigmoid(-x) * coef_of_dot : -sigmoid(x) * coef_of_dot;
    dv += coef * c;
    scatter(g.context_rows, ctx, coef * v);
  };

  for (const auto* neighbour : {&inst.prev, &inst.next}) {
    if (neighbour->has_value()) contribute(**neighbour, 1.0, true);
  }
  const double inv_k = inst.negatives.empty() ? 0.0 : 1.0 / inst.negatives.size();
  for (const auto& n : inst.negatives) contribute(n, inv_k, false);

  scatter(g.target_rows, inst.target, dv);
  return g;
}

double grad_check(const EncoderParams& params, const Instance& inst, double eps) {
  if (!(eps >= 1e-7 && eps <= 1e-3)) {
    throw ConfigError("grad_check: eps must lie in [1e-7, 1e-3]");
  }
  const Gradient analytic = objective_gradient(inst, params);
  EncoderParams probe = params;
  double worst = 0.0;

  auto check_table = [&](const std::map<std::size_t, Eigen::VectorXd>& rows,
                         Eigen::MatrixXd& table) {
    for (const auto& [row, grad] : rows) {
      const auto r = static_cast<Eigen::Index>(row);
      for (Eigen::Index c = 0; c < table.cols(); ++c) {
        const double saved = table(r, c);
        table(r, c) = saved + eps;
        const double up = objective(inst, probe);
        table(r, c) = saved - eps;
        const double down = objective(inst, probe);
        table(r, c) = saved;
        const double numeric = (up - down) / (2.0 * eps);
        const double a = grad(c);
        const double denom = std::max({std::abs(a), std::abs(numeric), 1e-3});
        worst = std::max(worst, std::abs(a - numeric) / denom);
      }
    }
  };
  check_table(analytic.target_rows, probe.emb_target);
  check_table(analytic.context_rows, probe.emb_context);
  return worst;
}

std::pair<EncoderParams, TrainReport> train(std::span<const Document> corpus,
                                            const TrainConfig& cfg) {
  validate(cfg);
  EncoderParams params = EncoderParams::with_vocabulary(corpus, cfg.dim);
  if (params.vocab_size() <= 1) throw ConfigError("train: empty vocabulary");

  std::vector<std::vector<std::size_t>> sentences;
  std::vector<Window> windows;
  for (const auto& doc : corpus) {
    const std::size_t base = sentences.size();
    for (const auto& s : doc.sentences) sentences.push_back(params.rows_of(s.tokens));
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (sentences[base + i].empty()) continue;
      Window w{base + i, std::nullopt, std::nullopt};
      if (i > 0 && !sentences[base + i - 1].empty()) w.prev = base + i - 1;
      if (i + 1 < doc.size() && !sentences[base + i + 1].empty()) w.next = base + i + 1;
      if (w.prev || w.next) windows.push_back(w);
    }
  }
  if (sentences.size() < 2) throw ConfigError("train: corpus needs at least 2 sentences");
  if (windows.empty()) throw ConfigError("train: no sentence has a neighbour");
  const auto usable = static_cast<std::size_t>(
      std::count_if(sentences.begin(), sentences.end(), [](const auto& s) { return !s.empty(); }));
  if (usable <= 3) throw ConfigError("train: corpus too small to draw negatives");

  std::mt19937_64 gen(cfg.seed);
  // Smaller starts sit near the all-zero saddle and barely move under SGD.
  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.dim));
  std::uniform_real_distribution<double> init(-scale, scale);
  for (auto* table : {&params.emb_target, &params.emb_context}) {
    for (Eigen::Index r = 0; r < table->rows(); ++r) {
      for (Eigen::Index c = 0; c < table->cols(); ++c) (*table)(r, c) = init(gen);
    }
  }

  NegativeSampler sampler(sentences, gen);
  std::vector<Instance> eval_set;
  eval_set.reserve(windows.size());
  for (const auto& w : windows) {
    eval_set.push_back(window_instance(w, sentences, sampler.draw(w, cfg.negatives_k)));
  }
  auto mean_objective = [&] {
    double sum = 0.0;
    for (const auto& inst : eval_set) sum += objective(inst, params);
    return sum / static_cast<double>(eval_set.size());
  };

  TrainReport report;
  std::vector<std::size_t> order(windows.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), gen);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      Gradient batch;
      for (std::size_t b = start; b < stop; ++b) {
        const auto& w = windows[order[b]];
        const auto inst = window_instance(w, sentences, sampler.draw(w, cfg.negatives_k));
        auto g = objective_gradient(inst, params);
        for (auto& [r, v] : g.target_rows) {
          auto [it, fresh] = batch.target_rows.try_emplace(r, v);
          if (!fresh) it->second += v;
        }
        for (auto& [r, v] : g.context_rows) {
          auto [it, fresh] = batch.context_rows.try_emplace(r, v);
          if (!fresh) it->second += v;
        }
      }
      const double step = cfg.lr / static_cast<double>(stop - start);
      for (const auto& [r, v] : batch.target_rows) {
        params.emb_target.row(static_cast<Eigen::Index>(r)) += step * v.transpose();
      }
      for (const auto& [r, v] : batch.context_rows) {
        params.emb_context.row(static_cast<Eigen::Index>(r)) += step * v.transpose();
      }
    }
    report.epoch_objective.push_back(mean_objective());
    spdlog::debug("epoch {} mean objective {:.6f}", epoch + 1, report.epoch_objective.back());
  }
  report.checksum = params_checksum(params);
  return {std::move(params), std::move(report)};
}

std::string params_checksum(const EncoderParams& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& t : params.tokens) {
    mix(t.data(), t.size());
    mix("\0", 1);
  }
  for (const auto* table : {&params.emb_target, &params.emb_context}) {
    const std::uint64_t shape[2] = {static_cast<std::uint64_t>(table->rows()),
                                    static_cast<std::uint64_t>(table->cols())};
    mix(shape, sizeof(shape));
    mix(table->data(), static_cast<std::size_t>(table->size()) * sizeof(double));
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace centrank
