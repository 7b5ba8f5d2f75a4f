#include "ts/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "ts/clustering.hpp"
#include "ts/embeddings.hpp"
#include "ts/errors.hpp"
#include "ts/stopwords.hpp"

namespace ts {

namespace {

using nlohmann::json;

std::optional<double> parse_preference(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size() && std::isfinite(value)) return value;
  } catch (const std::exception&) {
  }
  throw ValidationError("ap preference must be 'auto' or a number, got '" + text + "'");
}

double json_safe(double v) { return std::isfinite(v) ? v : 0.0; }

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw PipelineError("cannot write " + path.string());
  }
  out << j.dump(2) << "\n";
}

json score_to_json(const RougeScore& s) {
  return json{{"precision", s.precision}, {"recall", s.recall}, {"f", s.f_measure}};
}

json scores_to_json(const std::map<RougeVariant, RougeScore>& scores) {
  json out;
  for (const auto& [variant, score] : scores) {
    out[rouge_variant_name(variant)] = score_to_json(score);
  }
  return out;
}

}  // namespace

json config_to_json(const RunConfig& c) {
  return json{{"corpus", c.corpus_path},
              {"vectors", c.vectors_path},
              {"stoplist", c.stoplist_path},
              {"topic-name", c.topic_name},
              {"topic-expansion", c.topic_expansion},
              {"candidate-mode", c.candidate_mode},
              {"ap-preference", c.ap_preference},
              {"ap-damping", c.ap_damping},
              {"ap-max-iter", c.ap_max_iter},
              {"ap-convergence-window", c.ap_convergence_window},
              {"ap-similarity", c.ap_similarity},
              {"day-split-mode", c.day_split_mode},
              {"beta-alpha", c.beta_alpha},
              {"beta-cv", c.beta_cv},
              {"epsilon-mu", c.epsilon_mu},
              {"clamp-negative", c.clamp_negative},
              {"tf-mode", c.tf_mode},
              {"rouge-skip", c.rouge_skip},
              {"rouge-stem", c.rouge_stem},
              {"rouge-stopwords", c.rouge_stopwords_path},
              {"rouge-aggregate", c.rouge_aggregate},
              {"output-dir", c.output_dir},
              {"seed", c.seed}};
}

void validate_generate_config(const RunConfig& cfg) {
  if (cfg.corpus_path.empty() || !std::filesystem::exists(cfg.corpus_path)) {
    throw ValidationError("corpus file not found: " + cfg.corpus_path);
  }
  if (cfg.vectors_path.empty() || !std::filesystem::exists(cfg.vectors_path)) {
    throw ValidationError("vectors file not found: " + cfg.vectors_path);
  }
  if (!cfg.stoplist_path.empty() && !std::filesystem::exists(cfg.stoplist_path)) {
    throw ValidationError("stop-word file not found: " + cfg.stoplist_path);
  }
  if (cfg.topic_name.empty()) {
    throw ValidationError("topic name must not be empty");
  }
  parse_candidate_mode(cfg.candidate_mode);
  parse_preference(cfg.ap_preference);
  parse_ap_similarity(cfg.ap_similarity);
  parse_day_split_mode(cfg.day_split_mode);
  parse_tf_mode(cfg.tf_mode);
  if (!(cfg.ap_damping >= 0.5 && cfg.ap_damping < 1.0)) {
    throw ValidationError("ap damping must lie in [0.5, 1)");
  }
  if (cfg.ap_max_iter < 1 || cfg.ap_convergence_window < 1) {
    throw ValidationError("ap iteration limits must be >= 1");
  }
  // beta-alpha is nominally a cosine-product bound, but values above 1 are
  // legitimate for force-gating sweeps, so only finiteness is required.
  if (!std::isfinite(cfg.beta_alpha)) {
    throw ValidationError("beta-alpha must be finite");
  }
  if (!(cfg.beta_cv > 0.0)) {
    throw ValidationError("beta-cv must be > 0");
  }
  if (!(cfg.epsilon_mu > 0.0)) {
    throw ValidationError("epsilon-mu must be > 0");
  }
  if (cfg.rouge_aggregate != "mean" && cfg.rouge_aggregate != "max") {
    throw ValidationError("rouge-aggregate must be 'mean' or 'max'");
  }
  if (cfg.output_dir.empty()) {
    throw ValidationError("output-dir must not be empty");
  }
}

RougeOptions rouge_options_from(const RunConfig& cfg) {
  RougeOptions opts;
  opts.skip_distance = cfg.rouge_skip;
  opts.stem = cfg.rouge_stem;
  if (!cfg.rouge_stopwords_path.empty()) {
    opts.stopwords = load_stopwords(cfg.rouge_stopwords_path);
  }
  opts.aggregate = cfg.rouge_aggregate == "max" ? RougeOptions::Aggregate::kMax
                                                : RougeOptions::Aggregate::kMean;
  return opts;
}

GenerateOutputs run_generate(const RunConfig& cfg) {
  validate_generate_config(cfg);

  const auto stoplist =
      cfg.stoplist_path.empty() ? default_stopwords() : load_stopwords(cfg.stoplist_path);
  const TopicQuery topic = make_topic(cfg.topic_name, cfg.topic_expansion, stoplist);
  const Corpus corpus =
      load_corpus(cfg.corpus_path, parse_candidate_mode(cfg.candidate_mode), stoplist);
  if (!corpus.skipped.empty()) {
    std::cerr << "corpus: skipped " << corpus.skipped.size() << " record(s)\n";
  }

  // Restrict the vector vocabulary to what the run can actually use.
  std::unordered_set<std::string> vocab;
  for (const auto& p : corpus.paragraphs) vocab.insert(p.tokens.begin(), p.tokens.end());
  vocab.insert(topic.tokens.begin(), topic.tokens.end());

  EmbeddingSpace space = load_vectors(cfg.vectors_path, &vocab);
  attach_idf(space, corpus.stats);
  if (space.duplicate_words > 0) {
    std::cerr << "vectors: " << space.duplicate_words
              << " duplicated word(s), last occurrence kept\n";
  }

  const TfMode tf_mode = parse_tf_mode(cfg.tf_mode);
  std::vector<ParagraphVector> vectors;
  vectors.reserve(corpus.paragraphs.size());
  std::vector<EmbedDiagnostics> day_diag(static_cast<std::size_t>(corpus.days));
  for (const auto& p : corpus.paragraphs) {
    vectors.push_back(embed_paragraph(
        p, space, tf_mode, &day_diag[static_cast<std::size_t>(p.day_index - 1)]));
  }
  const ParagraphVector topic_vec = embed_topic(topic, space, tf_mode);

  ApOptions ap;
  ap.preference = parse_preference(cfg.ap_preference);
  ap.damping = cfg.ap_damping;
  ap.max_iter = cfg.ap_max_iter;
  ap.convergence_window = cfg.ap_convergence_window;
  const ClusteringResult clustering =
      affinity_propagation(vectors, ap, parse_ap_similarity(cfg.ap_similarity));
  if (!clustering.converged) {
    std::cerr << "clustering: affinity propagation did not converge within "
              << cfg.ap_max_iter << " iterations, using best-so-far exemplars\n";
  }

  const EventGrid grid = build_event_grid(corpus.paragraphs, vectors, clustering,
                                          parse_day_split_mode(cfg.day_split_mode));
  const ScoreMatrices matrices = build_matrices(grid, topic_vec);
  const GateParams gate{cfg.beta_alpha, cfg.beta_cv, cfg.epsilon_mu};
  const ViterbiState state =
      run_viterbi(grid, matrices, topic_vec, gate, vectors, cfg.clamp_negative);
  if (state.no_topical_path) {
    std::cerr << "viterbi: no topical path (all final weights <= 0)\n";
  }
  const TimelinePath path = backtrack(state);
  const Timeline timeline =
      extract_summaries(path, grid, topic_vec, corpus.paragraphs, vectors);

  std::filesystem::create_directories(cfg.output_dir);
  GenerateOutputs out;
  out.timeline = timeline;
  out.timeline_path = std::filesystem::path(cfg.output_dir) / "timeline.jsonl";
  out.report_path = std::filesystem::path(cfg.output_dir) / "report.json";
  write_timeline_jsonl(timeline, out.timeline_path.string());

  json report;
  report["config"] = config_to_json(cfg);

  json issues = json::array();
  for (std::size_t i = 0; i < corpus.skipped.size() && i < 10; ++i) {
    issues.push_back("line " + std::to_string(corpus.skipped[i].line) + ": " +
                     corpus.skipped[i].reason);
  }
  report["corpus"] = {{"total_paragraphs", corpus.stats.total_paragraphs},
                      {"days", corpus.days},
                      {"skipped_records", corpus.skipped.size()},
                      {"first_issues", issues}};

  json oov_per_day = json::array();
  std::int64_t oov_total = 0;
  std::int64_t token_total = 0;
  for (const auto& d : day_diag) {
    const std::int64_t day_tokens = d.in_vocab_tokens + d.oov_tokens;
    oov_per_day.push_back(day_tokens > 0 ? static_cast<double>(d.oov_tokens) /
                                               static_cast<double>(day_tokens)
                                         : 0.0);
    oov_total += d.oov_tokens;
    token_total += day_tokens;
  }
  report["embedding"] = {
      {"dimension", space.dimension},
      {"vocabulary_loaded", space.vectors.size()},
      {"malformed_vector_lines", space.malformed_lines},
      {"duplicate_vector_words", space.duplicate_words},
      {"oov_rate_overall",
       token_total > 0 ? static_cast<double>(oov_total) / static_cast<double>(token_total)
                       : 0.0},
      {"oov_rate_per_day", oov_per_day}};

  json occupancy = json::array();
  for (int i = 0; i < grid.days; ++i) {
    json row = json::array();
    for (int j = 0; j < grid.clusters; ++j) {
      row.push_back(grid.cell(i, j).members.size());
    }
    occupancy.push_back(row);
  }
  report["clustering"] = {{"k", clustering.k},
                          {"iterations_run", clustering.iterations_run},
                          {"converged", clustering.converged},
                          {"exemplars", clustering.exemplars},
                          {"occupancy", occupancy}};

  json gate_log = json::array();
  for (std::size_t i = 0; i < state.gate_log.size(); ++i) {
    const auto& g = state.gate_log[i];
    json entry{{"day_index", i + 1}, {"date", grid.dates[i]}, {"gated", g.gated}};
    entry["alpha"] = std::isfinite(g.alpha) ? json(g.alpha) : json(nullptr);
    entry["cv"] = std::isfinite(g.cv) ? json(g.cv) : json(nullptr);
    gate_log.push_back(entry);
  }
  report["gate_log"] = gate_log;

  json w1_final = json::array();
  for (int j = 0; j < grid.clusters; ++j) {
    w1_final.push_back(json_safe(state.w1(grid.days - 1, j)));
  }
  json filtered = json::array();
  for (const auto& step : path.filtered) {
    filtered.push_back({{"day_index", step.day + 1},
                        {"date", grid.dates[static_cast<std::size_t>(step.day)]},
                        {"cluster", step.cluster}});
  }
  report["viterbi"] = {{"w1_final_row", w1_final},
                       {"origin_path", path.origin},
                       {"filtered_path", filtered},
                       {"steps", path.filtered.size()},
                       {"no_topical_path", state.no_topical_path}};
  report["outputs"] = {{"timeline", out.timeline_path.string()}};

  write_json_file(report, out.report_path);
  out.report = std::move(report);
  return out;
}

ReferenceManifest read_reference_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("references manifest not found: " + path);
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("references manifest is not valid JSON: " + path + " (" +
                          e.what() + ")");
  }
  if (!doc.is_object() || !doc.contains("references") || !doc["references"].is_array()) {
    throw ValidationError("references manifest needs a 'references' array: " + path);
  }
  ReferenceManifest manifest;
  manifest.topic = doc.value("topic", std::string{});
  const auto base = std::filesystem::path(path).parent_path();
  for (const auto& entry : doc["references"]) {
    if (!entry.is_object() || !entry.contains("path")) {
      throw ValidationError("references manifest entries need a 'path': " + path);
    }
    std::filesystem::path ref_path = entry["path"].get<std::string>();
    if (ref_path.is_relative()) ref_path = base / ref_path;
    manifest.references.push_back({ref_path, entry.value("source", std::string{})});
  }
  if (manifest.references.empty()) {
    throw ValidationError("references manifest lists no references: " + path);
  }
  return manifest;
}

nlohmann::json run_evaluate(const std::string& timeline_path,
                            const std::string& manifest_path, const RougeOptions& opts,
                            const std::string& report_path) {
  const Timeline timeline = read_timeline_jsonl(timeline_path);
  const ReferenceManifest manifest = read_reference_manifest(manifest_path);

  std::vector<ReferenceTimeline> references;
  for (const auto& r : manifest.references) {
    ReferenceTimeline ref = read_reference_timeline(r.path.string());
    ref.topic = manifest.topic;
    ref.source = r.source;
    references.push_back(std::move(ref));
  }

  const auto concat = evaluate_timeline(timeline, references, EvalMode::kConcat, opts);
  const auto per_date = evaluate_timeline(timeline, references, EvalMode::kPerDate, opts);

  json report{{"topic", manifest.topic},
              {"timeline", timeline_path},
              {"system_entries", timeline.entries.size()},
              {"references", references.size()},
              {"concat", scores_to_json(concat)},
              {"per_date", scores_to_json(per_date)}};
  if (!report_path.empty()) {
    write_json_file(report, report_path);
  }
  return report;
}

nlohmann::json run_sweep(const RunConfig& base, const std::string& manifest_path,
                         const std::vector<double>& beta_alphas,
                         const std::vector<double>& beta_cvs,
                         const std::string& output_dir) {
  if (beta_alphas.empty() || beta_cvs.empty()) {
    throw ValidationError("sweep: both threshold grids must be non-empty");
  }
  read_reference_manifest(manifest_path);  // fail early on a bad manifest
  std::filesystem::create_directories(output_dir);

  json cells = json::array();
  int cell_index = 0;
  double best_f = -1.0;
  json best_cell;

  for (const double beta_alpha : beta_alphas) {
    for (const double beta_cv : beta_cvs) {
      RunConfig cfg = base;
      cfg.beta_alpha = beta_alpha;
      cfg.beta_cv = beta_cv;
      cfg.output_dir = (std::filesystem::path(output_dir) /
                        ("cell_" + std::to_string(cell_index)))
                           .string();
      json cell{{"beta_alpha", beta_alpha},
                {"beta_cv", beta_cv},
                {"output_dir", cfg.output_dir}};
      try {
        const GenerateOutputs generated = run_generate(cfg);
        const json eval_report =
            run_evaluate(generated.timeline_path.string(), manifest_path,
                         rouge_options_from(cfg),
                         (std::filesystem::path(cfg.output_dir) / "eval.json").string());
        cell["ok"] = true;
        cell["steps"] = generated.timeline.entries.size();
        cell["concat"] = eval_report["concat"];
        cell["per_date"] = eval_report["per_date"];
        // Rank cells on the concatenated score: the per-date score only sees
        // aligned dates, so it cannot penalize a timeline that dropped days.
        const double f = eval_report["concat"]["rouge_1"]["f"].get<double>();
        if (f > best_f) {
          best_f = f;
          best_cell = json{{"beta_alpha", beta_alpha}, {"beta_cv", beta_cv}};
        }
      } catch (const std::exception& e) {
        cell["ok"] = false;
        cell["error"] = e.what();
      }
      cells.push_back(std::move(cell));
      ++cell_index;
    }
  }

  json report{{"manifest", manifest_path}, {"cells", cells}};
  if (best_f >= 0.0) {
    best_cell["concat_rouge_1_f"] = best_f;
    report["best"] = best_cell;
  }
  write_json_file(report, std::filesystem::path(output_dir) / "sweep_report.json");
  return report;
}

int cmd_generate(const RunConfig& cfg) noexcept {
  try {
    const GenerateOutputs out = run_generate(cfg);
    std::cout << "wrote " << out.timeline_path.string() << " ("
              << out.timeline.entries.size() << " steps) and "
              << out.report_path.string() << "\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_evaluate(const std::string& timeline_path, const std::string& manifest_path,
                 const RunConfig& rouge_cfg, const std::string& report_path) noexcept {
  try {
    const json report = run_evaluate(timeline_path, manifest_path,
                                     rouge_options_from(rouge_cfg), report_path);
    std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_sweep(const RunConfig& base, const std::string& manifest_path,
              const std::vector<double>& beta_alphas, const std::vector<double>& beta_cvs,
              const std::string& output_dir) noexcept {
  try {
    const json report =
        run_sweep(base, manifest_path, beta_alphas, beta_cvs, output_dir);
    std::cout << "wrote "
              << (std::filesystem::path(output_dir) / "sweep_report.json").string()
              << " (" << report["cells"].size() << " cells)\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ts
