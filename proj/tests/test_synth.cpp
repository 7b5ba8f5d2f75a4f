#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ts/corpus.hpp"
#include "ts/embeddings.hpp"
#include "ts/errors.hpp"
#include "ts/similarity.hpp"
#include "ts/stopwords.hpp"
#include "ts/synth.hpp"

using nlohmann::json;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ts_synth_tests" / name;
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("same seed, same bytes") {
  ts::SynthSpec spec;
  spec.seed = 7;
  const auto a = ts::write_synth_fixture(spec, fresh_dir("seed7a"));
  const auto b = ts::write_synth_fixture(spec, fresh_dir("seed7b"));
  CHECK(slurp(a.corpus) == slurp(b.corpus));
  CHECK(slurp(a.vectors) == slurp(b.vectors));
  CHECK(slurp(a.reference) == slurp(b.reference));
  CHECK(slurp(a.truth) == slurp(b.truth));

  ts::SynthSpec other = spec;
  other.seed = 8;
  const auto c = ts::write_synth_fixture(other, fresh_dir("seed8"));
  CHECK(slurp(a.vectors) != slurp(c.vectors));
}

TEST_CASE("zero noise keeps every paragraph on the chain") {
  ts::SynthSpec spec;
  spec.noise_rate = 0.0;
  spec.days = 4;
  const auto fx = ts::write_synth_fixture(spec, fresh_dir("no_noise"));
  const auto corpus =
      ts::load_corpus(fx.corpus.string(), ts::CandidateMode::kHeadline, {});
  CHECK(corpus.stats.total_paragraphs == 4 * spec.per_day);
  for (const auto& p : corpus.paragraphs) {
    CHECK(p.id.find("-chain-") != std::string::npos);
  }
}

TEST_CASE("fixture structure matches the requested shape") {
  ts::SynthSpec spec;
  spec.days = 5;
  spec.per_day = 6;
  spec.noise_rate = 0.3;  // round(1.8) = 2 noise per day
  const auto fx = ts::write_synth_fixture(spec, fresh_dir("shape"));

  const auto corpus = ts::load_corpus(fx.corpus.string(), ts::CandidateMode::kHeadline,
                                      ts::default_stopwords());
  CHECK(corpus.days == 5);
  CHECK(corpus.stats.total_paragraphs == 30);
  int chain = 0;
  int noise = 0;
  for (const auto& p : corpus.paragraphs) {
    if (p.id.find("-chain-") != std::string::npos) {
      ++chain;
    } else {
      ++noise;
    }
  }
  CHECK(chain == 20);
  CHECK(noise == 10);

  // Truth lists exactly the chain ids per day.
  json truth;
  std::ifstream(fx.truth) >> truth;
  REQUIRE(truth["days"].size() == 5);
  for (const auto& day : truth["days"]) {
    CHECK(day["chain_ids"].size() == 4);
  }

  // The reference has one entry per day, dated like the corpus.
  int reference_lines = 0;
  std::ifstream ref(fx.reference);
  std::string line;
  while (std::getline(ref, line)) {
    if (!line.empty()) ++reference_lines;
  }
  CHECK(reference_lines == 5);

  // Manifest points at the reference.
  json manifest;
  std::ifstream(fx.manifest) >> manifest;
  CHECK(manifest["topic"] == spec.topic);
  CHECK(manifest["references"][0]["path"] == "reference.jsonl");
}

TEST_CASE("planted geometry thresholds hold after a reload") {
  ts::SynthSpec spec;
  spec.days = 6;
  spec.seed = 21;
  const auto fx = ts::write_synth_fixture(spec, fresh_dir("geometry"));

  const auto corpus = ts::load_corpus(fx.corpus.string(), ts::CandidateMode::kHeadline,
                                      ts::default_stopwords());
  auto space = ts::load_vectors(fx.vectors.string());
  ts::attach_idf(space, corpus.stats);
  std::vector<ts::ParagraphVector> vectors;
  std::vector<bool> chain;
  for (const auto& p : corpus.paragraphs) {
    vectors.push_back(ts::embed_paragraph(p, space));
    chain.push_back(p.id.find("-chain-") != std::string::npos);
  }
  double min_chain = 1.0;
  double max_cross = -1.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      const double c = ts::cosine(vectors[i], vectors[j]);
      if (chain[i] && chain[j]) min_chain = std::min(min_chain, c);
      if (chain[i] != chain[j]) max_cross = std::max(max_cross, c);
    }
  }
  CHECK(min_chain > 0.8);
  CHECK(max_cross < 0.3);

  // The topic stays close to the chain and far from the noise.
  ts::TopicQuery topic;
  topic.name = spec.topic;
  topic.tokens = ts::tokenize(spec.topic, {});
  const auto topic_vec = ts::embed_topic(topic, space);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double c = ts::cosine(topic_vec, vectors[i]);
    if (chain[i]) {
      CHECK(c > 0.8);
    } else {
      CHECK(c < 0.3);
    }
  }
}

TEST_CASE("synth validation") {
  CHECK_THROWS_AS(ts::write_synth_fixture({.days = 0}, fresh_dir("bad_days")),
                  ts::ValidationError);
  CHECK_THROWS_AS(ts::write_synth_fixture({.noise_rate = 0.95}, fresh_dir("bad_noise")),
                  ts::ValidationError);
  CHECK_THROWS_AS(ts::write_synth_fixture({.clusters = 1, .noise_rate = 0.4},
                                          fresh_dir("bad_clusters")),
                  ts::ValidationError);
  CHECK_THROWS_AS(ts::write_synth_fixture({.dim = 3}, fresh_dir("bad_dim")),
                  ts::ValidationError);
  CHECK_THROWS_AS(ts::write_synth_fixture({.start_date = "02-01-2011"},
                                          fresh_dir("bad_date")),
                  ts::ValidationError);
}
