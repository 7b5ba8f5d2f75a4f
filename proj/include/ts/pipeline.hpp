#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "ts/eval.hpp"
#include "ts/viterbi.hpp"

namespace ts {

/// Fully resolved settings for one `generate` run. String-typed enums are
/// parsed (and validated) when the pipeline starts.
struct RunConfig {
  std::string corpus_path;
  std::string vectors_path;
  std::string stoplist_path;  // empty: built-in English list
  std::string topic_name;
  std::string topic_expansion;
  std::string candidate_mode = "headline";

  std::string ap_preference = "auto";  // "auto" or a number
  double ap_damping = 0.9;
  int ap_max_iter = 500;
  int ap_convergence_window = 30;
  std::string ap_similarity = "cosine";
  std::string day_split_mode = "eq1";

  double beta_alpha = 0.1;
  double beta_cv = 1.0;
  double epsilon_mu = 1e-9;
  bool clamp_negative = true;
  std::string tf_mode = "raw";

  int rouge_skip = 4;  // negative = unlimited
  bool rouge_stem = false;
  std::string rouge_stopwords_path;  // empty: keep stop words
  std::string rouge_aggregate = "mean";

  std::string output_dir = "out";
  std::uint64_t seed = 42;

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json config_to_json(const RunConfig& cfg);

/// Throws ValidationError on unresolvable paths or out-of-range settings.
void validate_generate_config(const RunConfig& cfg);

RougeOptions rouge_options_from(const RunConfig& cfg);

struct GenerateOutputs {
  std::filesystem::path timeline_path;
  std::filesystem::path report_path;
  Timeline timeline;
  nlohmann::json report;
};

/// The whole pipeline: ingest, embed, cluster, run the gated DP, extract.
/// Writes timeline.jsonl and report.json under cfg.output_dir.
GenerateOutputs run_generate(const RunConfig& cfg);

struct ManifestReference {
  std::filesystem::path path;
  std::string source;
};

struct ReferenceManifest {
  std::string topic;
  std::vector<ManifestReference> references;  // resolved against the manifest dir
};

ReferenceManifest read_reference_manifest(const std::string& path);

/// Score a timeline file against the manifest's references in both modes.
/// Writes the report when report_path is non-empty.
nlohmann::json run_evaluate(const std::string& timeline_path,
                            const std::string& manifest_path, const RougeOptions& opts,
                            const std::string& report_path);

/// Grid search over the gate thresholds: one generate+evaluate per cell in an
/// isolated output directory. Per-cell failures are recorded, not fatal.
nlohmann::json run_sweep(const RunConfig& base, const std::string& manifest_path,
                         const std::vector<double>& beta_alphas,
                         const std::vector<double>& beta_cvs,
                         const std::string& output_dir);

// Exit-code wrappers for the CLI: 0 success, 1 validation error, 2 pipeline
// error.
int cmd_generate(const RunConfig& cfg) noexcept;
int cmd_evaluate(const std::string& timeline_path, const std::string& manifest_path,
                 const RunConfig& rouge_cfg, const std::string& report_path) noexcept;
int cmd_sweep(const RunConfig& base, const std::string& manifest_path,
              const std::vector<double>& beta_alphas,
              const std::vector<double>& beta_cvs,
              const std::string& output_dir) noexcept;

}  // namespace ts
