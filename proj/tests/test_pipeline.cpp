#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ts/config_cli.hpp"
#include "ts/errors.hpp"
#include "ts/pipeline.hpp"
#include "ts/synth.hpp"

using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ts_pipeline_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ts::RunConfig config_for(const ts::SynthFixture& fx, const std::string& out_dir) {
  ts::RunConfig cfg;
  cfg.corpus_path = fx.corpus.string();
  cfg.vectors_path = fx.vectors.string();
  cfg.topic_name = "topic0";
  cfg.output_dir = out_dir;
  return cfg;
}

json load_json(const std::filesystem::path& path) {
  json j;
  std::ifstream in(path);
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("generate runs the fixture end to end") {
  const auto dir = fresh_dir("smoke");
  const auto fx = ts::write_synth_fixture({.seed = 5}, dir / "fixture");
  const auto cfg = config_for(fx, (dir / "out").string());
  const auto out = ts::run_generate(cfg);

  CHECK(std::filesystem::exists(out.timeline_path));
  CHECK(std::filesystem::exists(out.report_path));
  CHECK(out.timeline.entries.size() >= 1);

  // Report structure: resolved config, gate log, occupancy, diagnostics.
  const auto& report = out.report;
  CHECK(report["config"]["topic-name"] == "topic0");
  CHECK(report["corpus"]["total_paragraphs"] == 60);
  CHECK(report["corpus"]["days"] == 10);
  CHECK(report["gate_log"].size() == 10);
  CHECK(report["gate_log"][0]["alpha"].is_null());
  CHECK(report["clustering"]["occupancy"].size() == 10);
  CHECK(report["embedding"]["oov_rate_per_day"].size() == 10);
  CHECK(report["embedding"]["oov_rate_overall"].get<double>() == 0.0);
  CHECK(report["viterbi"]["origin_path"].size() == 10);
  CHECK(report["viterbi"]["w1_final_row"].size() ==
        report["clustering"]["k"].get<std::size_t>());

  // The planted storyline is recovered on the default thresholds.
  const auto truth = load_json(fx.truth);
  REQUIRE(out.timeline.entries.size() == truth["days"].size());
  for (std::size_t i = 0; i < out.timeline.entries.size(); ++i) {
    CHECK(out.timeline.entries[i].calendar_date == truth["days"][i]["date"]);
    std::set<std::string> chain_ids;
    for (const auto& id : truth["days"][i]["chain_ids"]) {
      chain_ids.insert(id.get<std::string>());
    }
    CHECK(chain_ids.contains(out.timeline.entries[i].paragraph_id));
  }
}

TEST_CASE("generate is deterministic") {
  const auto dir = fresh_dir("determinism");
  const auto fx = ts::write_synth_fixture({.seed = 6}, dir / "fixture");
  const auto a = ts::run_generate(config_for(fx, (dir / "a").string()));
  const auto b = ts::run_generate(config_for(fx, (dir / "b").string()));
  CHECK(slurp(a.timeline_path) == slurp(b.timeline_path));

  // Reports differ only in the output paths they mention.
  auto ra = a.report;
  auto rb = b.report;
  ra.erase("outputs");
  rb.erase("outputs");
  ra["config"].erase("output-dir");
  rb["config"].erase("output-dir");
  CHECK(ra == rb);
}

TEST_CASE("validation failures name the offending path") {
  const auto dir = fresh_dir("validation");
  const auto fx = ts::write_synth_fixture({.seed = 9}, dir / "fixture");
  auto cfg = config_for(fx, (dir / "out").string());
  cfg.vectors_path = (dir / "missing.vec").string();
  try {
    ts::run_generate(cfg);
    FAIL("expected ValidationError");
  } catch (const ts::ValidationError& e) {
    CHECK(std::string(e.what()).find("missing.vec") != std::string::npos);
  }
  CHECK(ts::cmd_generate(cfg) == 1);

  auto bad_gate = config_for(fx, (dir / "out2").string());
  bad_gate.beta_cv = 0.0;
  CHECK_THROWS_AS(ts::run_generate(bad_gate), ts::ValidationError);
  auto bad_mode = config_for(fx, (dir / "out3").string());
  bad_mode.candidate_mode = "ngram_sentences";
  CHECK_THROWS_AS(ts::run_generate(bad_mode), ts::ValidationError);
}

TEST_CASE("config round-trips through the TOML surface") {
  const auto dir = fresh_dir("roundtrip");
  const auto fx = ts::write_synth_fixture({.seed = 12}, dir / "fixture");
  auto cfg = config_for(fx, (dir / "out_a").string());
  cfg.beta_alpha = 0.0625;  // representable exactly
  cfg.beta_cv = 1.5;
  cfg.ap_max_iter = 321;
  cfg.clamp_negative = false;
  cfg.rouge_stem = true;
  cfg.seed = 1234567;

  const std::string rendered = ts::render_config_toml(cfg);
  const auto config_path = dir / "resolved.toml";
  std::ofstream(config_path, std::ios::binary) << rendered;
  ts::RunConfig reparsed = ts::parse_config_toml(config_path.string());
  CHECK(reparsed == cfg);

  // Re-running from the round-tripped config reproduces the timeline bytes.
  const auto a = ts::run_generate(cfg);
  reparsed.output_dir = (dir / "out_b").string();
  const auto b = ts::run_generate(reparsed);
  CHECK(slurp(a.timeline_path) == slurp(b.timeline_path));
}

TEST_CASE("evaluate scores a run against the planted reference") {
  const auto dir = fresh_dir("evaluate");
  const auto fx = ts::write_synth_fixture({.seed = 15}, dir / "fixture");
  const auto cfg = config_for(fx, (dir / "out").string());
  const auto out = ts::run_generate(cfg);

  const auto report =
      ts::run_evaluate(out.timeline_path.string(), fx.manifest.string(),
                       ts::rouge_options_from(cfg), (dir / "eval.json").string());
  CHECK(std::filesystem::exists(dir / "eval.json"));
  CHECK(report["references"] == 1);
  const double per_date_r1 = report["per_date"]["rouge_1"]["f"].get<double>();
  CHECK(per_date_r1 >= 0.9);
  CHECK(report["concat"]["rouge_1"]["f"].get<double>() > 0.5);

  // A timeline evaluated against its own entries as reference is perfect.
  std::string self_ref;
  for (const auto& e : out.timeline.entries) {
    self_ref += json{{"date", e.calendar_date}, {"text", e.summary_text}}.dump() + "\n";
  }
  std::ofstream(dir / "self_ref.jsonl", std::ios::binary) << self_ref;
  std::ofstream(dir / "self_manifest.json", std::ios::binary)
      << json{{"topic", "topic0"},
              {"references", json::array({{{"path", "self_ref.jsonl"}}})}}
             .dump();
  const auto self_report =
      ts::run_evaluate(out.timeline_path.string(), (dir / "self_manifest.json").string(),
                       ts::rouge_options_from(cfg), "");
  for (const char* variant : {"rouge_1", "rouge_2", "rouge_s"}) {
    CHECK(self_report["concat"][variant]["f"].get<double>() == doctest::Approx(1.0));
    CHECK(self_report["per_date"][variant]["f"].get<double>() == doctest::Approx(1.0));
  }
}

TEST_CASE("evaluate rejects unusable manifests") {
  const auto dir = fresh_dir("bad_manifest");
  const auto fx = ts::write_synth_fixture({.seed = 18}, dir / "fixture");
  const auto out = ts::run_generate(config_for(fx, (dir / "out").string()));

  std::ofstream(dir / "empty.json", std::ios::binary)
      << json{{"topic", "t"}, {"references", json::array()}}.dump();
  ts::RunConfig cfg;
  CHECK(ts::cmd_evaluate(out.timeline_path.string(), (dir / "empty.json").string(), cfg,
                         "") == 1);
  CHECK(ts::cmd_evaluate("/nonexistent/timeline.jsonl", fx.manifest.string(), cfg, "") ==
        1);
}

TEST_CASE("sweep: degenerate grid equals a single run") {
  const auto dir = fresh_dir("sweep_single");
  const auto fx = ts::write_synth_fixture({.seed = 23}, dir / "fixture");
  auto cfg = config_for(fx, (dir / "single_out").string());
  const auto single = ts::run_generate(cfg);
  const auto single_eval =
      ts::run_evaluate(single.timeline_path.string(), fx.manifest.string(),
                       ts::rouge_options_from(cfg), "");

  const auto sweep = ts::run_sweep(cfg, fx.manifest.string(), {cfg.beta_alpha},
                                   {cfg.beta_cv}, (dir / "sweep").string());
  REQUIRE(sweep["cells"].size() == 1);
  const auto& cell = sweep["cells"][0];
  REQUIRE(cell["ok"].get<bool>());
  CHECK(cell["per_date"] == single_eval["per_date"]);
  CHECK(cell["concat"] == single_eval["concat"]);
  const auto cell_timeline =
      std::filesystem::path(cell["output_dir"].get<std::string>()) / "timeline.jsonl";
  CHECK(slurp(cell_timeline) == slurp(single.timeline_path));
}

TEST_CASE("sweep: an impossible alpha threshold gates every later day") {
  const auto dir = fresh_dir("sweep_gate");
  const auto fx = ts::write_synth_fixture({.seed = 29}, dir / "fixture");
  auto cfg = config_for(fx, (dir / "unused").string());
  const auto sweep = ts::run_sweep(cfg, fx.manifest.string(), {1.01}, {1.0},
                                   (dir / "sweep").string());
  REQUIRE(sweep["cells"].size() == 1);
  const auto& cell = sweep["cells"][0];
  REQUIRE(cell["ok"].get<bool>());
  CHECK(cell["steps"] == 1);  // only the initialization day survives
}

TEST_CASE("sweep: the defaults cell wins on the planted fixture") {
  const auto dir = fresh_dir("sweep_grid");
  const auto fx = ts::write_synth_fixture({.seed = 31}, dir / "fixture");
  auto cfg = config_for(fx, (dir / "unused").string());
  const auto sweep = ts::run_sweep(cfg, fx.manifest.string(), {0.1, 1.01}, {0.2, 1.0},
                                   (dir / "sweep").string());
  REQUIRE(sweep["cells"].size() == 4);
  REQUIRE(sweep.contains("best"));
  CHECK(sweep["best"]["beta_alpha"].get<double>() == 0.1);
  CHECK(sweep["best"]["beta_cv"].get<double>() == 1.0);
  CHECK(sweep["best"]["concat_rouge_1_f"].get<double>() >= 0.9);

  // The recovering cell also attains the per-date grid maximum (ties allowed:
  // per-date scoring only sees aligned dates).
  double best_per_date = 0.0;
  double defaults_per_date = -1.0;
  for (const auto& cell : sweep["cells"]) {
    if (!cell["ok"].get<bool>()) continue;
    const double f = cell["per_date"]["rouge_1"]["f"].get<double>();
    best_per_date = std::max(best_per_date, f);
    if (cell["beta_alpha"].get<double>() == 0.1 && cell["beta_cv"].get<double>() == 1.0) {
      defaults_per_date = f;
    }
  }
  CHECK(defaults_per_date == doctest::Approx(best_per_date));

  // Failed cells are recorded without aborting the sweep.
  auto broken = cfg;
  broken.vectors_path = (dir / "gone.vec").string();
  const auto with_failures = ts::run_sweep(broken, fx.manifest.string(), {0.1}, {1.0},
                                           (dir / "sweep_fail").string());
  REQUIRE(with_failures["cells"].size() == 1);
  CHECK_FALSE(with_failures["cells"][0]["ok"].get<bool>());
  CHECK(with_failures["cells"][0].contains("error"));
}
