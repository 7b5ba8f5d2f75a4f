#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace ts {

/// Parameters for the synthetic planted-storyline fixture. One cluster (the
/// chain) follows the topic across every day; the rest of each day's
/// paragraphs are drawn from well-separated noise bundles.
struct SynthSpec {
  std::string topic = "topic0";
  int days = 10;
  int clusters = 4;        // 1 chain bundle + (clusters - 1) noise bundles
  int per_day = 6;         // paragraphs per day
  double noise_rate = 0.3; // fraction of each day drawn from noise bundles
  int dim = 12;            // vector dimensionality; needs >= clusters + 1
  std::uint64_t seed = 7;
  std::string start_date = "2011-02-01";
  int core_tokens = 9;     // story tokens shared by one day's chain paragraphs
};

struct SynthFixture {
  std::filesystem::path dir;
  std::filesystem::path corpus;     // corpus.jsonl
  std::filesystem::path vectors;    // vectors.vec
  std::filesystem::path reference;  // reference.jsonl
  std::filesystem::path manifest;   // manifest.json
  std::filesystem::path truth;      // truth.json, the planted ground truth
  std::filesystem::path config;     // run.toml, ready for `generate --config`
};

/// Write the fixture into `dir` (created if needed) and verify the planted
/// geometry by reloading it through the real corpus/embedding path: every
/// chain-chain paragraph cosine must exceed 0.8 and every cross-bundle cosine
/// must stay below 0.3.
SynthFixture write_synth_fixture(const SynthSpec& spec,
                                 const std::filesystem::path& dir);

}  // namespace ts
