#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace ts {

/// What a corpus record contributes as a candidate summary unit.
/// kNgramSentences is accepted by the config surface but not implemented;
/// selecting it is a validation error.
enum class CandidateMode { kHeadline, kFirstSentence, kNgramSentences };

CandidateMode parse_candidate_mode(const std::string& name);

/// One candidate summary unit: a date-stamped paragraph.
struct DatedParagraph {
  std::string id;
  int day_index = 0;          // 1-based, dense over days that have >= 1 paragraph
  std::string calendar_date;  // ISO-8601 YYYY-MM-DD
  std::string text;           // the candidate text (headline or first sentence)
  std::vector<std::string> tokens;
  std::string source;
};

struct TopicQuery {
  std::string name;
  std::string expansion_text;
  std::vector<std::string> tokens;  // name + expansion, stop words removed
};

struct CorpusStats {
  std::unordered_map<std::string, int> document_frequency;  // paragraphs containing token
  int total_paragraphs = 0;
  std::set<int> days_present;
};

struct RecordIssue {
  int line = 0;
  std::string reason;
};

struct Corpus {
  std::vector<DatedParagraph> paragraphs;  // sorted by (day_index, id)
  CorpusStats stats;
  std::vector<RecordIssue> skipped;
  int days = 0;  // T; day_index values cover 1..days
};

/// Lowercase and split on non-alphanumeric characters, dropping stop-list
/// members. Case folding is ASCII-only; non-ASCII UTF-8 bytes are treated as
/// word characters so multi-byte sequences survive intact.
std::vector<std::string> tokenize(const std::string& text,
                                  const std::unordered_set<std::string>& stoplist);

/// Load a JSONL corpus ({"id","date","text","source"} per line) and produce
/// the per-day candidate sets. Malformed records are skipped and reported;
/// more than 10% skipped or zero valid records is fatal.
Corpus load_corpus(const std::string& path, CandidateMode mode,
                   const std::unordered_set<std::string>& stoplist);

/// Build a topic query from its name and optional expansion text.
/// A topic with no tokens left after stop-word removal cannot be embedded.
TopicQuery make_topic(const std::string& name, const std::string& expansion_text,
                      const std::unordered_set<std::string>& stoplist);

}  // namespace ts
