#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ts/config_cli.hpp"
#include "ts/errors.hpp"
#include "ts/pipeline.hpp"
#include "ts/synth.hpp"

namespace {

int run_synth(const ts::SynthSpec& spec, const std::string& out_dir) {
  try {
    const ts::SynthFixture fixture = ts::write_synth_fixture(spec, out_dir);
    std::cout << "fixture written to " << fixture.dir.string() << "\n"
              << "  corpus:     " << fixture.corpus.string() << "\n"
              << "  vectors:    " << fixture.vectors.string() << "\n"
              << "  reference:  " << fixture.reference.string() << "\n"
              << "  manifest:   " << fixture.manifest.string() << "\n"
              << "  truth:      " << fixture.truth.string() << "\n"
              << "  run config: " << fixture.config.string() << "\n";
    return 0;
  } catch (const ts::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

void write_resolved_config(const ts::RunConfig& cfg) {
  const auto path = std::filesystem::path(cfg.output_dir) / "resolved_config.toml";
  std::ofstream out(path, std::ios::binary);
  if (out) out << ts::render_config_toml(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic-anchored timeline generation from dated news paragraphs"};
  app.require_subcommand(1);

  ts::RunConfig cfg;

  auto* generate = app.add_subcommand(
      "generate", "Run the pipeline: ingest, embed, cluster, decode, extract");
  generate->set_config("--config", "", "TOML-style key = value config file");
  ts::add_generate_options(*generate, cfg);

  std::string timeline_path;
  std::string manifest_path;
  std::string eval_report_path;
  auto* evaluate =
      app.add_subcommand("evaluate", "Score a timeline against reference timelines");
  evaluate->add_option("--timeline", timeline_path, "System timeline JSONL")->required();
  evaluate->add_option("--references", manifest_path, "References manifest JSON")
      ->required();
  evaluate->add_option("--output", eval_report_path, "Evaluation report path");
  evaluate->add_option("--rouge-skip", cfg.rouge_skip,
                       "ROUGE-S max tokens between a pair; negative = unlimited");
  evaluate->add_option("--rouge-stem", cfg.rouge_stem,
                       "Porter-stem tokens before scoring");
  evaluate->add_option("--rouge-stopwords", cfg.rouge_stopwords_path,
                       "Stop-word file removed before scoring");
  evaluate->add_option("--rouge-aggregate", cfg.rouge_aggregate,
                       "mean | max across references");

  ts::SynthSpec spec;
  std::string synth_out;
  auto* synth =
      app.add_subcommand("synth", "Write a seeded planted-storyline fixture");
  synth->add_option("--out", synth_out, "Fixture directory")->required();
  synth->add_option("--topic", spec.topic, "Topic token");
  synth->add_option("--days", spec.days, "Number of days");
  synth->add_option("--clusters", spec.clusters, "Bundles: 1 chain + rest noise");
  synth->add_option("--per-day", spec.per_day, "Paragraphs per day");
  synth->add_option("--noise", spec.noise_rate, "Noise fraction per day");
  synth->add_option("--dim", spec.dim, "Vector dimensionality");
  synth->add_option("--seed", spec.seed, "Generator seed");
  synth->add_option("--start-date", spec.start_date, "First calendar day");
  synth->add_option("--core-tokens", spec.core_tokens, "Story tokens per day");

  std::vector<double> beta_alphas{0.0, 0.05, 0.1, 0.2, 0.3};
  std::vector<double> beta_cvs{0.5, 1.0, 2.0};
  std::string sweep_manifest;
  auto* sweep = app.add_subcommand(
      "sweep", "Grid-search the gate thresholds with generate + evaluate per cell");
  sweep->set_config("--config", "", "TOML-style key = value config file");
  ts::add_generate_options(*sweep, cfg);
  sweep->add_option("--references", sweep_manifest, "References manifest JSON")
      ->required();
  sweep->add_option("--beta-alpha-grid", beta_alphas, "Relevance thresholds")
      ->delimiter(',');
  sweep->add_option("--beta-cv-grid", beta_cvs, "Dispersion thresholds")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (generate->parsed()) {
    const int code = ts::cmd_generate(cfg);
    if (code == 0) write_resolved_config(cfg);
    return code;
  }
  if (evaluate->parsed()) {
    return ts::cmd_evaluate(timeline_path, manifest_path, cfg, eval_report_path);
  }
  if (synth->parsed()) {
    return run_synth(spec, synth_out);
  }
  if (sweep->parsed()) {
    return ts::cmd_sweep(cfg, sweep_manifest, beta_alphas, beta_cvs, cfg.output_dir);
  }
  return 1;
}
