#include "centrank/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "centrank/corpus.hpp"
#include "centrank/encoder.hpp"
#include "centrank/error.hpp"
#include "centrank/graph.hpp"
#include "centrank/parallel.hpp"
#include "centrank/rouge.hpp"
#include "centrank/selector.hpp"
#include "centrank/trainer.hpp"
#include "centrank/tuner.hpp"

namespace centrank::cli {
namespace {

using nlohmann::json;

void init_logging() {
  static const bool once = [] {
    auto logger = spdlog::stderr_color_mt("centrank");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("CENTRANK_LOG")) spdlog::cfg::helpers::load_levels(env);
    return true;
  }();
  (void)once;
}

void write_to(const std::string& path, std::ostream& out,
              const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw DataError("cannot write " + path);
  fn(file);
}

std::vector<EmbeddingMatrix> embed_corpus(const std::vector<Document>& docs, const RunConfig& cfg) {
  std::vector<EmbeddingMatrix> out(docs.size());
  if (cfg.encoder == "tfidf") {
    const auto model = cfg.tfidf_corpus.empty() ? fit_tfidf(docs)
                                                : fit_tfidf(load_jsonl(cfg.tfidf_corpus));
    parallel_for(docs.size(), cfg.jobs, [&](std::size_t d) { out[d] = encode_tfidf(docs[d], model); });
  } else if (cfg.encoder == "trained") {
    const auto params = load_params(cfg.params);
    parallel_for(docs.size(), cfg.jobs, [&](std::size_t d) {
      out[d] = encode_distributional(docs[d], params, Table::kTarget);
    });
  } else {
    const auto table = read_embedding_file(cfg.embeddings);
    for (std::size_t d = 0; d < docs.size(); ++d) out[d] = match_embeddings(table, docs[d]);
  }
  for (const auto& e : out) {
    if (!e.zero_rows.empty()) {
      spdlog::info("doc {}: {} sentence(s) encoded as zero vectors", e.doc_id, e.zero_rows.size());
    }
  }
  return out;
}

std::vector<double> centrality_scores(const EmbeddingMatrix& emb, const RunConfig& cfg) {
  const auto sim = similarity(emb, cfg.beta);
  if (cfg.centrality == "degree") return degree_centrality(sim);
  if (cfg.centrality == "pagerank") {
    auto pr = pagerank(sim, cfg.damping);
    if (!pr.converged) spdlog::warn("doc {}: pagerank did not converge", emb.doc_id);
    return pr.scores;
  }
  return directed_centrality(sim, *cfg.lambda1, *cfg.lambda2);
}

int cmd_summarize(const RunConfig& cfg, std::ostream& out) {
  const auto docs = load_jsonl(cfg.input);
  const auto embeddings = embed_corpus(docs, cfg);
  spdlog::info("summarizing {} documents with {} centrality", docs.size(), cfg.centrality);
  if (!cfg.matrix_dir.empty()) std::filesystem::create_directories(cfg.matrix_dir);
  std::vector<Summary> summaries(docs.size());
  parallel_for(docs.size(), cfg.jobs, [&](std::size_t d) {
    const auto scores = centrality_scores(embeddings[d], cfg);
    summaries[d] = select_topk(docs[d], scores, cfg.k);
    if (!cfg.matrix_dir.empty()) {
      std::ofstream csv(std::filesystem::path(cfg.matrix_dir) / (docs[d].id + ".csv"));
      write_matrix_csv(csv, similarity(embeddings[d], cfg.beta).normalized);
    }
  });
  write_to(cfg.output, out, [&](std::ostream& os) { write_summaries(os, summaries); });
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const auto summaries = load_summaries(cfg.summaries);
  const auto refs = references_of(load_jsonl(cfg.references));
  const auto report = evaluate(summaries, refs);
  spdlog::info("scored {} summaries", report.doc_count);
  write_to(cfg.output, out, [&](std::ostream& os) { os << format_report(report, cfg.label); });
  if (!cfg.json_output.empty()) {
    write_to(cfg.json_output, out, [&](std::ostream& os) { os << report_json(report).dump(2) << '\n'; });
  }
  return kExitOk;
}

int cmd_tune(const RunConfig& cfg, std::ostream& out) {
  auto docs = load_jsonl(cfg.input);
  if (docs.size() > cfg.max_docs) docs.resize(cfg.max_docs);
  const auto embeddings = embed_corpus(docs, cfg);
  TuneSpec spec;
  spec.lambda1_grid = cfg.lambda1_grid;
  spec.beta_grid = cfg.beta_grid;
  spec.mode = cfg.lambda_mode == "simplex" ? LambdaMode::kSimplex : LambdaMode::kFixed;
  spec.fixed_lambda2 = cfg.lambda2.value_or(1.0);
  spec.k = cfg.k;
  spec.max_docs = cfg.max_docs;
  spec.jobs = cfg.jobs;
  spdlog::info("tuning on {} documents, {} grid points", docs.size(),
               spec.lambda1_grid.size() * spec.beta_grid.size());
  const auto result = tune(docs, embeddings, spec);
  spdlog::info("best lambda1={} lambda2={} beta={} rouge1_f1={:.4f}", result.best.lambda1,
               result.best.lambda2, result.best.beta, result.best_score);
  write_to(cfg.output, out, [&](std::ostream& os) { os << tune_result_json(result).dump(2) << '\n'; });
  if (!cfg.csv_output.empty()) {
    write_to(cfg.csv_output, out,
             [&](std::ostream& os) { write_sweep_csv(os, sweep_plot_data(result)); });
  }
  return kExitOk;
}

int cmd_train(const RunConfig& cfg, std::ostream& out) {
  const auto docs = load_jsonl(cfg.input);
  TrainConfig tc;
  tc.dim = cfg.dim;
  tc.negatives_k = cfg.negatives;
  tc.lr = cfg.lr;
  tc.epochs = cfg.epochs;
  tc.batch_size = cfg.batch_size;
  tc.seed = *cfg.seed;
  auto [params, report] = train(docs, tc);
  write_to(cfg.output, out, [&](std::ostream& os) { save_params(os, params); });
  const json rep = {{"epoch_objective", report.epoch_objective}, {"checksum", report.checksum}};
  if (!cfg.report_output.empty()) {
    write_to(cfg.report_output, out, [&](std::ostream& os) { os << rep.dump(2) << '\n'; });
  }
  spdlog::info("trained {} rows, checksum {}", params.vocab_size(), report.checksum);
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto docs = load_jsonl(cfg.input);
  std::vector<Summary> summaries(docs.size());
  parallel_for(docs.size(), cfg.jobs, [&](std::size_t d) {
    if (!docs[d].reference) throw DataError("oracle: doc " + docs[d].id + " has no reference");
    auto result = oracle(docs[d], *docs[d].reference, cfg.max_sents);
    if (result.zero_overlap) spdlog::warn("doc {}: no overlap with reference", docs[d].id);
    summaries[d] = std::move(result.summary);
  });
  write_to(cfg.output, out, [&](std::ostream& os) { write_summaries(os, summaries); });
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const auto st = stats(load_jsonl(cfg.input));
  write_to(cfg.output, out, [&](std::ostream& os) {
    if (cfg.as_json) {
      os << json{{"doc_count", st.doc_count},       {"avg_doc_words", st.avg_doc_words},
                 {"avg_doc_sents", st.avg_doc_sents}, {"avg_ref_words", st.avg_ref_words},
                 {"avg_ref_sents", st.avg_ref_sents}, {"ref_docs", st.ref_docs}}
                .dump(2)
         << '\n';
      return;
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "docs %zu\ndoc words %.2f\ndoc sentences %.2f\nref words %.2f\n"
                  "ref sentences %.2f\ndocs with reference %zu\n",
                  st.doc_count, st.avg_doc_words, st.avg_doc_sents, st.avg_ref_words,
                  st.avg_ref_sents, st.ref_docs);
    os << buf;
  });
  return kExitOk;
}

int cmd_export_tfidf(const RunConfig& cfg, std::ostream& out) {
  const auto docs = load_jsonl(cfg.input);
  RunConfig tfidf = cfg;
  tfidf.encoder = "tfidf";
  const auto embeddings = embed_corpus(docs, tfidf);
  write_to(cfg.output, out, [&](std::ostream& os) {
    for (const auto& e : embeddings) write_embeddings(os, e);
  });
  return kExitOk;
}

int cmd_export_sentences(const RunConfig& cfg, std::ostream& out) {
  const auto docs = load_jsonl(cfg.input);
  write_to(cfg.output, out, [&](std::ostream& os) { write_sentences_jsonl(os, docs); });
  return kExitOk;
}

}  // namespace

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {
      "summarize", "eval", "tune", "train-encoder", "oracle", "stats", "export-tfidf",
      "export-sentences"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  const bool needs_input = cfg.command != "eval";
  if (needs_input && cfg.input.empty()) throw ConfigError(cfg.command + " requires --input");

  if (cfg.command == "summarize" || cfg.command == "tune") {
    if (cfg.encoder == "external" && cfg.embeddings.empty()) {
      throw ConfigError("--encoder external requires --embeddings");
    }
    if (cfg.encoder == "trained" && cfg.params.empty()) {
      throw ConfigError("--encoder trained requires --params");
    }
    if (cfg.encoder != "tfidf" && cfg.encoder != "trained" && cfg.encoder != "external") {
      throw ConfigError("unknown encoder '" + cfg.encoder + "'");
    }
    if (cfg.k == 0) throw ConfigError("--k must be at least 1");
  }
  if (cfg.command == "summarize") {
    if (cfg.centrality == "directed" && (!cfg.lambda1 || !cfg.lambda2)) {
      throw ConfigError("--centrality directed requires --lambda1 and --lambda2");
    }
    if (cfg.centrality != "directed" && cfg.centrality != "degree" &&
        cfg.centrality != "pagerank") {
      throw ConfigError("unknown centrality '" + cfg.centrality + "'");
    }
    if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) throw ConfigError("--beta must lie in [0, 1]");
  }
  if (cfg.command == "tune" && cfg.lambda_mode != "fixed" && cfg.lambda_mode != "simplex") {
    throw ConfigError("--lambda-mode must be fixed or simplex");
  }
  if (cfg.command == "eval" && (cfg.summaries.empty() || cfg.references.empty())) {
    throw ConfigError("eval requires --summaries and --references");
  }
  if (cfg.command == "train-encoder" && !cfg.seed) {
    throw ConfigError("train-encoder requires --seed");
  }
  if (cfg.jobs == 0) throw ConfigError("--jobs must be at least 1");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  init_logging();
  try {
    validate(cfg);
    static const std::map<std::string, int (*)(const RunConfig&, std::ostream&)> dispatch = {
        {"summarize", cmd_summarize},   {"eval", cmd_eval},
        {"tune", cmd_tune},             {"train-encoder", cmd_train},
        {"oracle", cmd_oracle},         {"stats", cmd_stats},
        {"export-tfidf", cmd_export_tfidf}, {"export-sentences", cmd_export_sentences}};
    return dispatch.at(cfg.command)(cfg, out);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Position-aware centrality ranking for extractive summarization", "centrank"};
  app.set_config("--config", "", "TOML file with option defaults; flags override it");
  app.require_subcommand(1);

  double lambda1 = 0.0, lambda2 = 1.0;
  std::uint64_t seed = 0;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", cfg.input, "Corpus JSONL")->check(CLI::ExistingFile);
    sub->add_option("-o,--output", cfg.output, "Output path, '-' for stdout");
    sub->add_option("--jobs", cfg.jobs, "Worker threads");
  };
  auto add_encoder = [&](CLI::App* sub) {
    sub->add_option("--encoder", cfg.encoder, "tfidf|trained|external")
        ->check(CLI::IsMember({"tfidf", "trained", "external"}));
    sub->add_option("--embeddings", cfg.embeddings, "Embedding interchange JSONL");
    sub->add_option("--params", cfg.params, "Trained encoder parameters");
    sub->add_option("--tfidf-corpus", cfg.tfidf_corpus, "Corpus for idf statistics");
  };

  auto* summarize = app.add_subcommand("summarize", "Rank sentences and extract summaries");
  add_io(summarize);
  add_encoder(summarize);
  summarize->add_option("--centrality", cfg.centrality, "degree|directed|pagerank")
      ->check(CLI::IsMember({"degree", "directed", "pagerank"}));
  auto* l1_opt = summarize->add_option("--lambda1", lambda1, "Weight of edges to earlier sentences");
  auto* l2_opt = summarize->add_option("--lambda2", lambda2, "Weight of edges to later sentences");
  summarize->add_option("--beta", cfg.beta, "Similarity threshold in [0, 1]");
  summarize->add_option("--k", cfg.k, "Sentences per summary");
  summarize->add_option("--damping", cfg.damping, "PageRank damping");
  summarize->add_option("--matrix-dir", cfg.matrix_dir, "Dump normalized matrices as CSV here");
  auto* s_seed = summarize->add_option("--seed", seed, "Random seed");

  auto* eval = app.add_subcommand("eval", "Score summaries with ROUGE-1/2/L");
  eval->add_option("--summaries", cfg.summaries, "Summary JSONL")->check(CLI::ExistingFile);
  eval->add_option("--references", cfg.references, "Corpus JSONL with summaries")
      ->check(CLI::ExistingFile);
  eval->add_option("-o,--output", cfg.output, "Text report path");
  eval->add_option("--json", cfg.json_output, "Machine-readable report path");
  eval->add_option("--label", cfg.label, "Row label in the report");

  auto* tune_cmd = app.add_subcommand("tune", "Grid-search lambda1, lambda2 and beta");
  add_io(tune_cmd);
  add_encoder(tune_cmd);
  tune_cmd->add_option("--lambda-mode", cfg.lambda_mode, "fixed|simplex")
      ->check(CLI::IsMember({"fixed", "simplex"}));
  auto* t_l2 = tune_cmd->add_option("--lambda2", lambda2, "lambda2 in fixed mode");
  tune_cmd->add_option("--lambda1-grid", cfg.lambda1_grid, "Comma-separated values")
      ->delimiter(',');
  tune_cmd->add_option("--beta-grid", cfg.beta_grid, "Comma-separated values")->delimiter(',');
  tune_cmd->add_option("--k", cfg.k, "Sentences per summary");
  tune_cmd->add_option("--max-docs", cfg.max_docs, "Validation documents used");
  tune_cmd->add_option("--csv", cfg.csv_output, "Sweep table path");
  auto* t_seed = tune_cmd->add_option("--seed", seed, "Random seed");

  auto* train_cmd = app.add_subcommand("train-encoder", "Train the distributional encoder");
  add_io(train_cmd);
  train_cmd->add_option("--dim", cfg.dim, "Embedding width");
  train_cmd->add_option("--negatives", cfg.negatives, "Negatives per positive");
  train_cmd->add_option("--lr", cfg.lr, "Learning rate");
  train_cmd->add_option("--epochs", cfg.epochs, "Epochs");
  train_cmd->add_option("--batch-size", cfg.batch_size, "Instances per step");
  train_cmd->add_option("--report", cfg.report_output, "Training report JSON path");
  auto* tr_seed = train_cmd->add_option("--seed", seed, "Random seed (required)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Greedy ROUGE oracle extracts");
  add_io(oracle_cmd);
  oracle_cmd->add_option("--max-sents", cfg.max_sents, "Maximum sentences per extract");

  auto* stats_cmd = app.add_subcommand("stats", "Corpus length statistics");
  add_io(stats_cmd);
  stats_cmd->add_flag("--json", cfg.as_json, "Emit JSON");

  auto* tfidf_cmd = app.add_subcommand("export-tfidf", "Write tf-idf sentence vectors");
  add_io(tfidf_cmd);
  tfidf_cmd->add_option("--tfidf-corpus", cfg.tfidf_corpus, "Corpus for idf statistics");

  auto* sent_cmd = app.add_subcommand("export-sentences", "Write segmented sentences");
  add_io(sent_cmd);

  init_logging();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (l1_opt->count() > 0) cfg.lambda1 = lambda1;
  if (l2_opt->count() > 0 || t_l2->count() > 0) cfg.lambda2 = lambda2;
  for (auto* opt : {s_seed, t_seed, tr_seed}) {
    if (opt->count() > 0) cfg.seed = seed;
  }
  return run(cfg, out, err);
}

}  // namespace centrank::cli
