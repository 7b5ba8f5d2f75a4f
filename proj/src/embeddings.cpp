#include "ts/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ts/errors.hpp"
#include "ts/similarity.hpp"

namespace ts {

ParagraphVector make_paragraph_vector(Vectord values) {
  ParagraphVector v;
  v.norm = values.norm();
  v.values = std::move(values);
  return v;
}

TfMode parse_tf_mode(const std::string& name) {
  if (name == "raw") return TfMode::kRaw;
  if (name == "binary") return TfMode::kBinary;
  if (name == "log") return TfMode::kLog;
  throw ValidationError("unknown tf mode: " + name);
}

EmbeddingSpace load_vectors(const std::string& path,
                            const std::unordered_set<std::string>* vocab_filter) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("vectors file not found: " + path);
  }

  std::string header;
  if (!std::getline(in, header)) {
    throw PipelineError("vectors: empty file " + path);
  }
  long long declared_count = 0;
  long long dimension = 0;
  {
    std::istringstream fields(header);
    std::string extra;
    if (!(fields >> declared_count >> dimension) || (fields >> extra) ||
        declared_count < 0 || dimension <= 0) {
      throw PipelineError("vectors: malformed header '" + header + "' in " + path);
    }
  }

  EmbeddingSpace space;
  space.dimension = static_cast<Index>(dimension);
  int data_lines = 0;
  std::string line;
  Vectord row(space.dimension);

  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++data_lines;

    const char* p = line.c_str();
    while (*p == ' ' || *p == '\t') ++p;
    const char* word_begin = p;
    while (*p && *p != ' ' && *p != '\t') ++p;
    std::string word(word_begin, p);

    bool ok = !word.empty();
    for (Index j = 0; ok && j < space.dimension; ++j) {
      char* end = nullptr;
      const double value = std::strtod(p, &end);
      if (end == p || !std::isfinite(value)) {
        ok = false;
        break;
      }
      row[j] = value;
      p = end;
    }
    if (ok) {
      while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
      ok = (*p == '\0');
    }
    if (!ok) {
      ++space.malformed_lines;
      continue;
    }
    if (vocab_filter && !vocab_filter->contains(word)) continue;
    if (!space.vectors.emplace(word, row).second) {
      space.vectors[word] = row;  // last occurrence wins
      ++space.duplicate_words;
    }
  }

  if (space.vectors.empty() && space.malformed_lines == data_lines && data_lines > 0) {
    throw PipelineError("vectors: no line in " + path +
                        " matches the header arity of " + std::to_string(dimension));
  }
  return space;
}

void attach_idf(EmbeddingSpace& space, const CorpusStats& stats) {
  const double total = static_cast<double>(std::max(stats.total_paragraphs, 1));
  space.idf.clear();
  space.idf.reserve(stats.document_frequency.size());
  for (const auto& [word, df] : stats.document_frequency) {
    space.idf.emplace(word, std::log(total / static_cast<double>(df)));
  }
  space.oov_corpus_idf = std::log(total);
}

ParagraphVector embed_tokens(std::span<const std::string> tokens,
                             const EmbeddingSpace& space, TfMode tf_mode,
                             EmbedDiagnostics* diag) {
  // Distinct tokens in first-appearance order keep the accumulation
  // deterministic across runs.
  std::vector<std::pair<const std::string*, int>> counts;
  {
    std::unordered_map<std::string_view, std::size_t> position;
    for (const auto& t : tokens) {
      auto [it, inserted] = position.emplace(t, counts.size());
      if (inserted) {
        counts.emplace_back(&t, 1);
      } else {
        ++counts[it->second].second;
      }
    }
  }

  Vectord sum = Vectord::Zero(space.dimension);
  double total_weight = 0.0;
  for (const auto& [token, count] : counts) {
    const auto vec = space.vectors.find(*token);
    if (vec == space.vectors.end()) {
      if (diag) diag->oov_tokens += count;
      continue;
    }
    if (diag) diag->in_vocab_tokens += count;
    const auto idf_it = space.idf.find(*token);
    const double idf = idf_it != space.idf.end() ? idf_it->second : space.oov_corpus_idf;
    double tf = 0.0;
    switch (tf_mode) {
      case TfMode::kRaw: tf = static_cast<double>(count); break;
      case TfMode::kBinary: tf = 1.0; break;
      case TfMode::kLog: tf = 1.0 + std::log(static_cast<double>(count)); break;
    }
    const double weight = tf * idf;
    sum += weight * vec->second;
    total_weight += weight;
  }

  if (total_weight <= 0.0) {
    return make_paragraph_vector(Vectord::Zero(space.dimension));
  }
  return make_paragraph_vector(sum / total_weight);
}

ParagraphVector embed_paragraph(const DatedParagraph& p, const EmbeddingSpace& space,
                                TfMode tf_mode, EmbedDiagnostics* diag) {
  return embed_tokens(p.tokens, space, tf_mode, diag);
}

ParagraphVector embed_topic(const TopicQuery& q, const EmbeddingSpace& space,
                            TfMode tf_mode) {
  ParagraphVector v = embed_tokens(q.tokens, space, tf_mode);
  if (v.norm == 0.0) {
    throw PipelineError("topic '" + q.name +
                        "' embeds to the zero vector (no usable vocabulary)");
  }
  return v;
}

double cosine(const ParagraphVector& a, const ParagraphVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  return std::clamp(a.values.dot(b.values) / (a.norm * b.norm), -1.0, 1.0);
}

}  // namespace ts
