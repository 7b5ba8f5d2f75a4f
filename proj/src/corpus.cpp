#include "ts/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "json.hpp"
#include "ts/dates.hpp"
#include "ts/errors.hpp"

namespace ts {

namespace {

using nlohmann::json;

// Longest prefix ending at the first sentence terminator, or the whole text.
std::string first_sentence(const std::string& text) {
  const auto pos = text.find_first_of(".!?");
  if (pos == std::string::npos || pos == 0) return text;
  return text.substr(0, pos);
}

struct RawRecord {
  std::string id;
  std::string date;
  std::string text;
  std::string source;
  std::vector<std::string> tokens;
};

}  // namespace

CandidateMode parse_candidate_mode(const std::string& name) {
  if (name == "headline") return CandidateMode::kHeadline;
  if (name == "first_sentence") return CandidateMode::kFirstSentence;
  if (name == "ngram_sentences") return CandidateMode::kNgramSentences;
  throw ValidationError("unknown candidate mode: " + name);
}

std::vector<std::string> tokenize(const std::string& text,
                                  const std::unordered_set<std::string>& stoplist) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (!stoplist.contains(current)) out.push_back(current);
      current.clear();
    }
  };
  for (unsigned char c : text) {
    if (c < 0x80) {
      if (std::isalnum(c)) {
        current.push_back(static_cast<char>(std::tolower(c)));
      } else {
        flush();
      }
    } else {
      current.push_back(static_cast<char>(c));
    }
  }
  flush();
  return out;
}

Corpus load_corpus(const std::string& path, CandidateMode mode,
                   const std::unordered_set<std::string>& stoplist) {
  if (mode == CandidateMode::kNgramSentences) {
    throw ValidationError("candidate mode 'ngram_sentences' is not implemented");
  }
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("corpus file not found: " + path);
  }

  std::vector<RawRecord> records;
  std::vector<RecordIssue> skipped;
  std::unordered_set<std::string> seen_ids;
  int line_no = 0;
  int attempted = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++attempted;

    const json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      skipped.push_back({line_no, "not a JSON object"});
      continue;
    }
    if (!record.contains("id") || !record["id"].is_string() ||
        record["id"].get<std::string>().empty()) {
      skipped.push_back({line_no, "missing or empty 'id'"});
      continue;
    }
    if (!record.contains("date") || !record["date"].is_string() ||
        !is_valid_iso_date(record["date"].get<std::string>())) {
      skipped.push_back({line_no, "missing or unparseable 'date'"});
      continue;
    }
    if (!record.contains("text") || !record["text"].is_string() ||
        record["text"].get<std::string>().empty()) {
      skipped.push_back({line_no, "missing or empty 'text'"});
      continue;
    }

    RawRecord raw;
    raw.id = record["id"].get<std::string>();
    raw.date = record["date"].get<std::string>();
    raw.text = record["text"].get<std::string>();
    if (record.contains("source") && record["source"].is_string()) {
      raw.source = record["source"].get<std::string>();
    }
    if (mode == CandidateMode::kFirstSentence) {
      raw.text = first_sentence(raw.text);
    }
    raw.tokens = tokenize(raw.text, stoplist);
    if (raw.tokens.empty()) {
      skipped.push_back({line_no, "no tokens left after stop-word removal"});
      continue;
    }
    if (!seen_ids.insert(raw.id).second) {
      skipped.push_back({line_no, "duplicate id '" + raw.id + "'"});
      continue;
    }
    records.push_back(std::move(raw));
  }

  if (records.empty()) {
    throw PipelineError("corpus: no valid records in " + path);
  }
  if (10 * static_cast<long>(skipped.size()) > static_cast<long>(attempted)) {
    throw PipelineError("corpus: " + std::to_string(skipped.size()) + " of " +
                        std::to_string(attempted) + " records skipped (>10%) in " + path);
  }

  // Dense day mapping: distinct dates in calendar order -> 1..T.
  std::map<std::string, int> day_of_date;
  for (const auto& r : records) day_of_date[r.date] = 0;
  int next_day = 0;
  for (auto& [date, day] : day_of_date) day = ++next_day;

  Corpus corpus;
  corpus.days = next_day;
  corpus.skipped = std::move(skipped);
  corpus.paragraphs.reserve(records.size());
  for (auto& r : records) {
    DatedParagraph p;
    p.id = std::move(r.id);
    p.calendar_date = std::move(r.date);
    p.day_index = day_of_date.at(p.calendar_date);
    p.text = std::move(r.text);
    p.tokens = std::move(r.tokens);
    p.source = std::move(r.source);
    corpus.paragraphs.push_back(std::move(p));
  }
  std::sort(corpus.paragraphs.begin(), corpus.paragraphs.end(),
            [](const DatedParagraph& a, const DatedParagraph& b) {
              return std::tie(a.day_index, a.id) < std::tie(b.day_index, b.id);
            });

  auto& stats = corpus.stats;
  stats.total_paragraphs = static_cast<int>(corpus.paragraphs.size());
  for (int d = 1; d <= corpus.days; ++d) stats.days_present.insert(d);
  for (const auto& p : corpus.paragraphs) {
    std::unordered_set<std::string> distinct(p.tokens.begin(), p.tokens.end());
    for (const auto& t : distinct) ++stats.document_frequency[t];
  }
  return corpus;
}

TopicQuery make_topic(const std::string& name, const std::string& expansion_text,
                      const std::unordered_set<std::string>& stoplist) {
  TopicQuery topic;
  topic.name = name;
  topic.expansion_text = expansion_text;
  std::string combined = name;
  if (!expansion_text.empty()) {
    combined += " ";
    combined += expansion_text;
  }
  topic.tokens = tokenize(combined, stoplist);
  if (topic.tokens.empty()) {
    throw ValidationError("topic '" + name + "' has no tokens after stop-word removal");
  }
  return topic;
}

}  // namespace ts
