#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace centrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

struct RunConfig {
  std::string command;  // summarize|eval|tune|train-encoder|oracle|stats|export-tfidf|export-sentences

  std::string input;
  std::string output = "-";
  std::string summaries;
  std::string references;
  std::string embeddings;
  std::string params;
  std::string tfidf_corpus;

  std::string encoder = "tfidf";         // tfidf|trained|external
  std::string centrality = "directed";   // degree|directed|pagerank
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  double beta = 0.6;
  std::size_t k = 3;
  double damping = 0.85;
  std::string matrix_dir;

  std::string lambda_mode = "fixed";  // fixed|simplex
  std::vector<double> lambda1_grid{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<double> beta_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t max_docs = 1000;
  std::string csv_output;

  std::size_t dim = 64;
  std::size_t negatives = 5;
  double lr = 2.0;
  std::size_t epochs = 10;
  std::size_t batch_size = 20;
  std::string report_output;

  std::size_t max_sents = 3;
  std::string json_output;
  std::string label = "system";
  bool as_json = false;

  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
};

// Throws ConfigError on contradictory settings.
void validate(const RunConfig& cfg);

// Executes a validated configuration. Artifacts go to files, or to `out`
// when a path is "-".
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses arguments (without the program name), then validates and runs.
// Returns 0 on success, 1 on data errors, 2 on usage errors.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace centrank::cli
