#include "ts/eval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

#include "json.hpp"
#include "ts/corpus.hpp"
#include "ts/errors.hpp"
#include "ts/stemmer.hpp"

namespace ts {

namespace {

using nlohmann::json;

using GramCounts = std::unordered_map<std::string, int>;

constexpr char kGramSep = '\x1f';

GramCounts ngram_counts(std::span<const std::string> tokens, int n) {
  GramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (int j = 1; j < n; ++j) {
      gram += kGramSep;
      gram += tokens[i + static_cast<std::size_t>(j)];
    }
    ++counts[gram];
  }
  return counts;
}

GramCounts skip_bigram_counts(std::span<const std::string> tokens, int max_skip) {
  GramCounts counts;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const std::size_t limit =
        max_skip < 0 ? tokens.size()
                     : std::min(tokens.size(),
                                i + 2 + static_cast<std::size_t>(max_skip));
    for (std::size_t j = i + 1; j < limit; ++j) {
      ++counts[tokens[i] + kGramSep + tokens[j]];
    }
  }
  return counts;
}

RougeScore clipped_overlap(const GramCounts& system, const GramCounts& reference) {
  long matched = 0;
  long system_total = 0;
  long reference_total = 0;
  for (const auto& [gram, count] : system) system_total += count;
  for (const auto& [gram, count] : reference) {
    reference_total += count;
    const auto it = system.find(gram);
    if (it != system.end()) matched += std::min(count, it->second);
  }
  RougeScore score;
  score.precision = system_total > 0
                        ? static_cast<double>(matched) / static_cast<double>(system_total)
                        : 0.0;
  score.recall = reference_total > 0 ? static_cast<double>(matched) /
                                           static_cast<double>(reference_total)
                                     : 0.0;
  const double pr = score.precision + score.recall;
  score.f_measure = pr > 0.0 ? 2.0 * score.precision * score.recall / pr : 0.0;
  return score;
}

RougeScore score_pair(std::span<const std::string> system,
                      std::span<const std::string> reference, RougeVariant variant,
                      const RougeOptions& opts) {
  switch (variant) {
    case RougeVariant::kRouge1:
      return rouge_n(system, reference, 1);
    case RougeVariant::kRouge2:
      return rouge_n(system, reference, 2);
    case RougeVariant::kRougeS:
      return rouge_s(system, reference, opts.skip_distance);
  }
  return {};
}

RougeScore mean_of(const std::vector<RougeScore>& scores) {
  RougeScore out;
  if (scores.empty()) return out;
  for (const auto& s : scores) {
    out.precision += s.precision;
    out.recall += s.recall;
    out.f_measure += s.f_measure;
  }
  const double n = static_cast<double>(scores.size());
  out.precision /= n;
  out.recall /= n;
  out.f_measure /= n;
  return out;
}

RougeScore max_of(const std::vector<RougeScore>& scores) {
  RougeScore out;
  for (const auto& s : scores) {
    if (s.f_measure > out.f_measure) out = s;
  }
  return out;
}

}  // namespace

const char* rouge_variant_name(RougeVariant v) {
  switch (v) {
    case RougeVariant::kRouge1: return "rouge_1";
    case RougeVariant::kRouge2: return "rouge_2";
    case RougeVariant::kRougeS: return "rouge_s";
  }
  return "?";
}

RougeScore rouge_n(std::span<const std::string> system,
                   std::span<const std::string> reference, int n) {
  return clipped_overlap(ngram_counts(system, n), ngram_counts(reference, n));
}

RougeScore rouge_s(std::span<const std::string> system,
                   std::span<const std::string> reference, int max_skip) {
  return clipped_overlap(skip_bigram_counts(system, max_skip),
                         skip_bigram_counts(reference, max_skip));
}

std::vector<std::string> rouge_tokenize(const std::string& text,
                                        const RougeOptions& opts) {
  std::vector<std::string> tokens = tokenize(text, opts.stopwords);
  if (opts.stem) {
    for (auto& t : tokens) t = porter_stem(std::move(t));
  }
  return tokens;
}

ReferenceTimeline read_reference_timeline(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("reference timeline not found: " + path);
  }
  ReferenceTimeline ref;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object() || !record.contains("date") ||
        !record["date"].is_string() || !record.contains("text") ||
        !record["text"].is_string()) {
      throw PipelineError("reference: malformed entry at " + path + ":" +
                          std::to_string(line_no));
    }
    ref.entries.emplace_back(record["date"].get<std::string>(),
                             record["text"].get<std::string>());
  }
  if (ref.entries.empty()) {
    throw PipelineError("reference: no entries in " + path);
  }
  std::stable_sort(ref.entries.begin(), ref.entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return ref;
}

std::map<RougeVariant, RougeScore> evaluate_timeline(
    const Timeline& system, const std::vector<ReferenceTimeline>& references,
    EvalMode mode, const RougeOptions& opts) {
  if (references.empty()) {
    throw ValidationError("evaluate: no reference timelines given");
  }

  static constexpr RougeVariant kVariants[] = {
      RougeVariant::kRouge1, RougeVariant::kRouge2, RougeVariant::kRougeS};

  // System side, grouped by date for the aligned mode (dates are unique in a
  // generated timeline, but grouping keeps external inputs well defined).
  std::map<std::string, std::string> system_by_date;
  std::string system_all;
  for (const auto& e : system.entries) {
    auto& slot = system_by_date[e.calendar_date];
    if (!slot.empty()) slot += ' ';
    slot += e.summary_text;
    if (!system_all.empty()) system_all += ' ';
    system_all += e.summary_text;
  }

  std::map<RougeVariant, std::vector<RougeScore>> per_reference;
  for (const auto& ref : references) {
    if (mode == EvalMode::kConcat) {
      std::string ref_all;
      for (const auto& [date, text] : ref.entries) {
        if (!ref_all.empty()) ref_all += ' ';
        ref_all += text;
      }
      const auto sys_tokens = rouge_tokenize(system_all, opts);
      const auto ref_tokens = rouge_tokenize(ref_all, opts);
      for (auto v : kVariants) {
        per_reference[v].push_back(score_pair(sys_tokens, ref_tokens, v, opts));
      }
    } else {
      std::map<std::string, std::string> ref_by_date;
      for (const auto& [date, text] : ref.entries) {
        auto& slot = ref_by_date[date];
        if (!slot.empty()) slot += ' ';
        slot += text;
      }
      std::map<RougeVariant, std::vector<RougeScore>> per_date;
      for (const auto& [date, sys_text] : system_by_date) {
        const auto it = ref_by_date.find(date);
        if (it == ref_by_date.end()) continue;
        const auto sys_tokens = rouge_tokenize(sys_text, opts);
        const auto ref_tokens = rouge_tokenize(it->second, opts);
        for (auto v : kVariants) {
          per_date[v].push_back(score_pair(sys_tokens, ref_tokens, v, opts));
        }
      }
      for (auto v : kVariants) {
        // No overlapping dates leaves an all-zero score for this reference.
        per_reference[v].push_back(mean_of(per_date[v]));
      }
    }
  }

  std::map<RougeVariant, RougeScore> out;
  for (auto v : kVariants) {
    out[v] = opts.aggregate == RougeOptions::Aggregate::kMean
                 ? mean_of(per_reference[v])
                 : max_of(per_reference[v]);
  }
  return out;
}

}  // namespace ts
