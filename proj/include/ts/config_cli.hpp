#pragma once

#include <string>

#include "CLI11.hpp"
#include "ts/pipeline.hpp"

namespace ts {

/// Register every RunConfig field as a CLI11 option. Shared between the tool
/// and the tests so the TOML config surface has exactly one definition.
/// Captured defaults come from the current values of `cfg`, which makes
/// config_to_str on a fresh app render a fully-resolved config.
inline void add_generate_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--corpus", cfg.corpus_path, "Corpus JSONL file")
      ->capture_default_str();
  app.add_option("--vectors", cfg.vectors_path, "Pre-trained word vectors (text format)")
      ->capture_default_str();
  app.add_option("--stoplist", cfg.stoplist_path,
                 "Stop-word file; empty uses the built-in English list")
      ->capture_default_str();
  app.add_option("--topic-name", cfg.topic_name, "Topic label, e.g. 'BP Oil'")
      ->capture_default_str();
  app.add_option("--topic-expansion", cfg.topic_expansion,
                 "Optional expansion text appended before embedding")
      ->capture_default_str();
  app.add_option("--candidate-mode", cfg.candidate_mode,
                 "headline | first_sentence | ngram_sentences")
      ->capture_default_str();
  app.add_option("--ap-preference", cfg.ap_preference,
                 "Affinity propagation preference: 'auto' (median) or a number")
      ->capture_default_str();
  app.add_option("--ap-damping", cfg.ap_damping, "Message damping in [0.5, 1)")
      ->capture_default_str();
  app.add_option("--ap-max-iter", cfg.ap_max_iter, "Iteration cap")
      ->capture_default_str();
  app.add_option("--ap-convergence-window", cfg.ap_convergence_window,
                 "Iterations the exemplar set must hold still")
      ->capture_default_str();
  app.add_option("--ap-similarity", cfg.ap_similarity, "cosine | neg_sq_euclidean")
      ->capture_default_str();
  app.add_option("--day-split-mode", cfg.day_split_mode, "eq1 | majority")
      ->capture_default_str();
  app.add_option("--beta-alpha", cfg.beta_alpha, "Relevance gate threshold")
      ->capture_default_str();
  app.add_option("--beta-cv", cfg.beta_cv, "Dispersion gate threshold")
      ->capture_default_str();
  app.add_option("--epsilon-mu", cfg.epsilon_mu,
                 "Mean magnitude below which the dispersion is undefined")
      ->capture_default_str();
  app.add_option("--clamp-negative", cfg.clamp_negative,
                 "Clamp negative transition/emission weights to 0 before the DP")
      ->capture_default_str();
  app.add_option("--tf-mode", cfg.tf_mode, "raw | binary | log")
      ->capture_default_str();
  app.add_option("--rouge-skip", cfg.rouge_skip,
                 "ROUGE-S max tokens between a skip-bigram pair; negative = unlimited")
      ->capture_default_str();
  app.add_option("--rouge-stem", cfg.rouge_stem,
                 "Porter-stem tokens before ROUGE scoring")
      ->capture_default_str();
  app.add_option("--rouge-stopwords", cfg.rouge_stopwords_path,
                 "Stop-word file removed before ROUGE scoring; empty keeps all tokens")
      ->capture_default_str();
  app.add_option("--rouge-aggregate", cfg.rouge_aggregate,
                 "mean | max across references")
      ->capture_default_str();
  app.add_option("--output-dir", cfg.output_dir, "Directory for timeline and report")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed recorded with the run")
      ->capture_default_str();
}

/// Render the resolved config as the same TOML-style file `--config` reads.
inline std::string render_config_toml(const RunConfig& cfg) {
  CLI::App app;
  RunConfig copy = cfg;
  add_generate_options(app, copy);
  return app.config_to_str(/*default_also=*/true, /*write_description=*/false);
}

/// Parse a config file through the same option set the CLI uses.
inline RunConfig parse_config_toml(const std::string& path) {
  CLI::App app;
  RunConfig cfg;
  add_generate_options(app, cfg);
  app.set_config("--config");
  // CLI11 takes the argument vector in reverse order.
  app.parse(std::vector<std::string>{path, "--config"});
  return cfg;
}

}  // namespace ts
