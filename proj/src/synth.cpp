#include "ts/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "json.hpp"
#include "ts/corpus.hpp"
#include "ts/dates.hpp"
#include "ts/embeddings.hpp"
#include "ts/errors.hpp"
#include "ts/similarity.hpp"
#include "ts/stopwords.hpp"
#include "ts/types.hpp"

namespace ts {

namespace {

using nlohmann::json;

constexpr double kTopicChainCosine = 0.94;  // planted cos(topic, chain)
constexpr double kTopicNoiseWeight = 0.1;   // small positive topic component
constexpr double kJitter = 0.02;

std::string word_tag(const char* prefix, int a, int b = -1, int c = -1) {
  char buf[48];
  if (b < 0) {
    std::snprintf(buf, sizeof(buf), "%s%02d", prefix, a);
  } else if (c < 0) {
    std::snprintf(buf, sizeof(buf), "%s%02dn%02d", prefix, a, b);
  } else {
    std::snprintf(buf, sizeof(buf), "%s%02dn%02dw%02d", prefix, a, b, c);
  }
  return buf;
}

Vectord jitter_around(const Vectord& direction, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Vectord v = direction;
  for (Index i = 0; i < v.size(); ++i) {
    v[i] += kJitter * uniform(rng);
  }
  return v.normalized();
}

void append_vector_line(std::string& out, const std::string& word, const Vectord& v) {
  out += word;
  char buf[32];
  for (Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), " %.17g", v[i]);
    out += buf;
  }
  out += '\n';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw PipelineError("synth: cannot write " + path.string());
  }
  out << content;
}

void verify_planted_geometry(const SynthFixture& fixture) {
  const auto stoplist = default_stopwords();
  const Corpus corpus =
      load_corpus(fixture.corpus.string(), CandidateMode::kHeadline, stoplist);
  EmbeddingSpace space = load_vectors(fixture.vectors.string());
  attach_idf(space, corpus.stats);

  std::vector<ParagraphVector> vectors;
  std::vector<bool> is_chain;
  vectors.reserve(corpus.paragraphs.size());
  for (const auto& p : corpus.paragraphs) {
    vectors.push_back(embed_paragraph(p, space));
    is_chain.push_back(p.id.find("-chain-") != std::string::npos);
  }

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double c = cosine(vectors[i], vectors[j]);
      if (is_chain[i] && is_chain[j]) {
        if (c <= 0.8) {
          throw PipelineError("synth: chain cosine " + std::to_string(c) +
                              " fell below 0.8 between " + corpus.paragraphs[i].id +
                              " and " + corpus.paragraphs[j].id);
        }
      } else if (is_chain[i] != is_chain[j]) {
        if (c >= 0.3) {
          throw PipelineError("synth: cross cosine " + std::to_string(c) +
                              " reached 0.3 between " + corpus.paragraphs[i].id +
                              " and " + corpus.paragraphs[j].id);
        }
      }
    }
  }
}

}  // namespace

SynthFixture write_synth_fixture(const SynthSpec& spec,
                                 const std::filesystem::path& dir) {
  if (spec.days < 1 || spec.per_day < 1 || spec.clusters < 1 || spec.core_tokens < 1) {
    throw ValidationError("synth: days, per-day, clusters and core-tokens must be >= 1");
  }
  if (spec.noise_rate < 0.0 || spec.noise_rate > 0.9) {
    throw ValidationError("synth: noise rate must lie in [0, 0.9]");
  }
  if (!is_valid_iso_date(spec.start_date)) {
    throw ValidationError("synth: start date must be ISO-8601: " + spec.start_date);
  }
  const int noise_per_day = static_cast<int>(std::lround(spec.noise_rate * spec.per_day));
  const int chain_per_day = spec.per_day - noise_per_day;
  if (chain_per_day < 1) {
    throw ValidationError("synth: noise rate leaves no chain paragraph per day");
  }
  if (noise_per_day > 0 && spec.clusters < 2) {
    throw ValidationError("synth: noise paragraphs need at least 2 clusters");
  }
  if (spec.dim < spec.clusters + 1) {
    throw ValidationError("synth: dim must be >= clusters + 1");
  }

  std::filesystem::create_directories(dir);
  SynthFixture fixture;
  fixture.dir = dir;
  fixture.corpus = dir / "corpus.jsonl";
  fixture.vectors = dir / "vectors.vec";
  fixture.reference = dir / "reference.jsonl";
  fixture.manifest = dir / "manifest.json";
  fixture.truth = dir / "truth.json";
  fixture.config = dir / "run.toml";

  std::mt19937_64 rng(spec.seed);
  const int dim = spec.dim;

  // Bundle directions: the chain leans toward the topic axis, noise bundles
  // sit on their own axes with a small positive topic component.
  Vectord topic_dir = Vectord::Zero(dim);
  topic_dir[0] = 1.0;
  Vectord chain_dir = Vectord::Zero(dim);
  chain_dir[0] = kTopicChainCosine;
  chain_dir[1] = std::sqrt(1.0 - kTopicChainCosine * kTopicChainCosine);
  std::vector<Vectord> noise_dirs;
  for (int c = 1; c < spec.clusters; ++c) {
    Vectord v = Vectord::Zero(dim);
    v[0] = kTopicNoiseWeight;
    v[static_cast<Index>(c) + 1] = 1.0;
    noise_dirs.push_back(v.normalized());
  }

  const auto topic_tokens = tokenize(spec.topic, {});
  if (topic_tokens.empty()) {
    throw ValidationError("synth: topic has no tokens: " + spec.topic);
  }

  std::string vector_lines;
  int word_count = 0;
  auto emit_word = [&](const std::string& word, const Vectord& v) {
    append_vector_line(vector_lines, word, v);
    ++word_count;
  };
  for (const auto& t : topic_tokens) emit_word(t, topic_dir);

  std::string corpus_lines;
  std::string reference_lines;
  json truth_days = json::array();

  int noise_rotation = 0;
  for (int day = 0; day < spec.days; ++day) {
    const std::string date = add_days(spec.start_date, day);

    std::vector<std::string> core;
    for (int k = 0; k < spec.core_tokens; ++k) {
      core.push_back(word_tag("story", day, k));
      emit_word(core.back(), jitter_around(chain_dir, rng));
    }
    std::string core_text;
    for (const auto& w : core) {
      if (!core_text.empty()) core_text += ' ';
      core_text += w;
    }
    reference_lines += json{{"date", date}, {"text", core_text}}.dump();
    reference_lines += '\n';

    json chain_ids = json::array();
    for (int p = 0; p < chain_per_day; ++p) {
      const std::string filler = word_tag("extra", day, p);
      emit_word(filler, jitter_around(chain_dir, rng));
      char id[48];
      std::snprintf(id, sizeof(id), "d%02d-chain-p%02d", day, p);
      chain_ids.push_back(id);
      corpus_lines += json{{"id", id},
                           {"date", date},
                           {"text", core_text + " " + filler},
                           {"source", "synth"}}
                          .dump();
      corpus_lines += '\n';
    }

    for (int p = 0; p < noise_per_day; ++p) {
      const int bundle = 1 + (noise_rotation++ % (spec.clusters - 1));
      std::vector<std::string> words;
      for (int k = 0; k < 8; ++k) {
        words.push_back(word_tag("noise", day, p, k));
        emit_word(words.back(), jitter_around(noise_dirs[static_cast<std::size_t>(bundle - 1)], rng));
      }
      std::string text;
      for (const auto& w : words) {
        if (!text.empty()) text += ' ';
        text += w;
      }
      char id[48];
      std::snprintf(id, sizeof(id), "d%02d-noise%d-p%02d", day, bundle, p);
      corpus_lines += json{{"id", id},
                           {"date", date},
                           {"text", text},
                           {"source", "synth"}}
                          .dump();
      corpus_lines += '\n';
    }

    truth_days.push_back({{"date", date}, {"day", day + 1}, {"chain_ids", chain_ids}});
  }

  write_file(fixture.corpus, corpus_lines);
  write_file(fixture.reference, reference_lines);
  write_file(fixture.vectors,
             std::to_string(word_count) + " " + std::to_string(dim) + "\n" + vector_lines);

  const json manifest{
      {"topic", spec.topic},
      {"references", json::array({{{"path", "reference.jsonl"}, {"source", "synth"}}})}};
  write_file(fixture.manifest, manifest.dump(2) + "\n");

  const json truth{{"topic", spec.topic},
                   {"seed", spec.seed},
                   {"noise_rate", spec.noise_rate},
                   {"days", truth_days}};
  write_file(fixture.truth, truth.dump(2) + "\n");

  std::string config;
  config += "corpus = \"" + fixture.corpus.string() + "\"\n";
  config += "vectors = \"" + fixture.vectors.string() + "\"\n";
  config += "topic-name = \"" + spec.topic + "\"\n";
  config += "output-dir = \"" + (dir / "out").string() + "\"\n";
  config += "seed = " + std::to_string(spec.seed) + "\n";
  write_file(fixture.config, config);

  verify_planted_geometry(fixture);
  return fixture;
}

}  // namespace ts
