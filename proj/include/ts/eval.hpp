#pragma once

#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ts/viterbi.hpp"

namespace ts {

enum class RougeVariant { kRouge1, kRouge2, kRougeS };

const char* rouge_variant_name(RougeVariant v);

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;  // 2PR/(P+R), or 0 when P+R == 0
};

/// Clipped n-gram overlap: matched = sum_g min(count_sys(g), count_ref(g)),
/// P = matched / |system n-grams|, R = matched / |reference n-grams|.
/// An empty side contributes 0 to its ratio.
RougeScore rouge_n(std::span<const std::string> system,
                   std::span<const std::string> reference, int n);

/// Skip-bigram overlap with clipping. A pair (tokens[i], tokens[j]), i < j,
/// qualifies when at most max_skip tokens sit between them; max_skip < 0
/// means unlimited. Texts shorter than two tokens score 0.
RougeScore rouge_s(std::span<const std::string> system,
                   std::span<const std::string> reference, int max_skip);

struct RougeOptions {
  int skip_distance = 4;  // ROUGE-S gap bound; negative = unlimited
  bool stem = false;
  std::unordered_set<std::string> stopwords;  // removed before scoring when set
  enum class Aggregate { kMean, kMax } aggregate = Aggregate::kMean;
};

/// ROUGE preprocessing: lowercase, punctuation stripped, stop words kept
/// unless opts.stopwords is non-empty, optional Porter stemming.
std::vector<std::string> rouge_tokenize(const std::string& text,
                                        const RougeOptions& opts);

struct ReferenceTimeline {
  std::string topic;
  std::string source;
  std::vector<std::pair<std::string, std::string>> entries;  // (date, text), date-sorted
};

/// JSONL, {"date","text"} per line. Must be non-empty and well formed.
ReferenceTimeline read_reference_timeline(const std::string& path);

enum class EvalMode { kConcat, kPerDate };

/// Score a system timeline against every reference and aggregate
/// (arithmetic mean by default, max behind the option).
///   concat:   all summaries vs. all reference entries, one score per reference
///   per_date: date-aligned pairs, averaged over the shared dates first;
///             no shared dates gives 0.
std::map<RougeVariant, RougeScore> evaluate_timeline(
    const Timeline& system, const std::vector<ReferenceTimeline>& references,
    EvalMode mode, const RougeOptions& opts);

}  // namespace ts
