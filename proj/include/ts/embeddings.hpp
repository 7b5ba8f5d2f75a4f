#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "ts/corpus.hpp"
#include "ts/types.hpp"

namespace ts {

/// Vocabulary -> dense vector map plus the corpus IDF statistics.
/// Immutable once attach_idf has run; safe to share across threads.
struct EmbeddingSpace {
  Index dimension = 0;
  std::unordered_map<std::string, Vectord> vectors;
  std::unordered_map<std::string, double> idf;  // ln(N / df) per in-corpus word
  double oov_corpus_idf = 0.0;  // weight for vocabulary words the corpus never saw
  int malformed_lines = 0;
  int duplicate_words = 0;
};

/// A paragraph or topic vector with its Euclidean norm cached.
struct ParagraphVector {
  Vectord values;
  double norm = 0.0;
};

ParagraphVector make_paragraph_vector(Vectord values);

/// Term-frequency weighting inside one paragraph. Raw counts by default;
/// the alternatives exist as a sensitivity knob.
enum class TfMode { kRaw, kBinary, kLog };

TfMode parse_tf_mode(const std::string& name);

/// Load a textual vector file: header "vocab_count dimension", then one word
/// and `dimension` floats per line. Lines with the wrong arity or non-finite
/// components are skipped and counted; duplicated words keep the last value.
/// If every data line disagrees with the header arity the file is unusable.
EmbeddingSpace load_vectors(const std::string& path,
                            const std::unordered_set<std::string>* vocab_filter = nullptr);

/// Populate idf from corpus statistics: idf[w] = ln(N / df[w]).
/// Vocabulary words the corpus never contains fall back to ln(N), i.e. df
/// clamped to 1.
void attach_idf(EmbeddingSpace& space, const CorpusStats& stats);

struct EmbedDiagnostics {
  std::int64_t in_vocab_tokens = 0;
  std::int64_t oov_tokens = 0;
};

/// TF-IDF weighted mean of the in-vocabulary token vectors:
///   v = sum_w tf(w)*idf(w)*vec(w) / sum_w tf(w)*idf(w).
/// Returns the zero vector when nothing is in vocabulary or the total weight
/// is zero. Out-of-vocabulary tokens contribute nothing (counted in diag).
ParagraphVector embed_tokens(std::span<const std::string> tokens,
                             const EmbeddingSpace& space, TfMode tf_mode = TfMode::kRaw,
                             EmbedDiagnostics* diag = nullptr);

ParagraphVector embed_paragraph(const DatedParagraph& p, const EmbeddingSpace& space,
                                TfMode tf_mode = TfMode::kRaw,
                                EmbedDiagnostics* diag = nullptr);

/// Same formula over the topic tokens. A zero topic vector is fatal: every
/// emission weight would degenerate to 0.
ParagraphVector embed_topic(const TopicQuery& q, const EmbeddingSpace& space,
                            TfMode tf_mode = TfMode::kRaw);

/// Cosine using the cached norms; zero-norm arguments give 0.
double cosine(const ParagraphVector& a, const ParagraphVector& b);

}  // namespace ts
