#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <set>

#include "json.hpp"
#include "ts/corpus.hpp"
#include "ts/dates.hpp"
#include "ts/errors.hpp"
#include "ts/stopwords.hpp"

using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "ts_corpus_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

std::string record(const std::string& id, const std::string& date,
                   const std::string& text) {
  return json{{"id", id}, {"date", date}, {"text", text}}.dump() + "\n";
}

// Independent tokenizer: regex over pre-lowercased ASCII text. Only used as
// an oracle on ASCII fixtures.
std::vector<std::string> reference_tokenize(std::string text,
                                            const std::unordered_set<std::string>& stop) {
  for (auto& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const std::regex word("[a-z0-9]+");
  std::vector<std::string> out;
  for (std::sregex_iterator it(text.begin(), text.end(), word), end; it != end; ++it) {
    if (!stop.contains(it->str())) out.push_back(it->str());
  }
  return out;
}

}  // namespace

TEST_CASE("tokenize applies the stated rules") {
  const std::unordered_set<std::string> stop{"the"};
  CHECK(ts::tokenize("The oil spill, the worst.", stop) ==
        std::vector<std::string>{"oil", "spill", "worst"});
  CHECK(ts::tokenize("", stop).empty());
  CHECK(ts::tokenize("THE THE the", stop).empty());
  CHECK(ts::tokenize("a-b_c 42", {}) == std::vector<std::string>{"a", "b", "c", "42"});
}

TEST_CASE("tokenize agrees with an independent reference on fixture sentences") {
  const auto& stop = ts::default_stopwords();
  const std::vector<std::string> sentences{
      "BP's oil spill reached the coast on Tuesday.",
      "Protesters gathered in Cairo; 3,000 arrests were reported!",
      "U.S. officials said: \"containment failed\" (again).",
      "  leading and trailing   whitespace  ",
      "numbers 123 mixed42tokens 7up",
      "ALL CAPS HEADLINE ABOUT H1N1 VACCINES",
      "hyphen-ated and slash/separated words",
      "the of and by itself",
  };
  for (const auto& s : sentences) {
    CAPTURE(s);
    CHECK(ts::tokenize(s, stop) == reference_tokenize(s, stop));
  }
}

TEST_CASE("tokenize keeps multi-byte UTF-8 sequences intact") {
  const auto tokens = ts::tokenize("caf\xc3\xa9 price", {});
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0] == "caf\xc3\xa9");
  CHECK(tokens[1] == "price");
}

TEST_CASE("stop-word files accept comments and blank lines") {
  const auto path = temp_file("stop.txt", "# comment\nThe\n\n  and # trailing\n");
  const auto words = ts::load_stopwords(path.string());
  CHECK(words == std::unordered_set<std::string>{"the", "and"});
  CHECK_THROWS_AS(ts::load_stopwords("/nonexistent/stop.txt"), ts::ValidationError);
}

TEST_CASE("built-in stop list matches the shipped data file") {
  const auto shipped =
      ts::load_stopwords(std::string(TS_SOURCE_DIR) + "/data/stopwords_en.txt");
  CHECK(shipped == ts::default_stopwords());
}

TEST_CASE("load_corpus maps dates densely") {
  const auto path = temp_file("dense.jsonl", record("a", "2011-02-01", "alpha news") +
                                                 record("b", "2011-02-01", "beta news") +
                                                 record("c", "2011-02-03", "gamma news"));
  const auto corpus = ts::load_corpus(path.string(), ts::CandidateMode::kHeadline, {});
  REQUIRE(corpus.paragraphs.size() == 3);
  CHECK(corpus.days == 2);
  CHECK(corpus.paragraphs[0].day_index == 1);
  CHECK(corpus.paragraphs[1].day_index == 1);
  CHECK(corpus.paragraphs[2].day_index == 2);
  CHECK(corpus.stats.days_present == std::set<int>{1, 2});
}

TEST_CASE("load_corpus skips and reports degenerate records") {
  const std::unordered_set<std::string> stop{"the"};
  const auto path = temp_file(
      "skips.jsonl",
      record("a", "2011-02-01", "alpha news") + "not json at all\n" +
          record("b", "2011-02-30", "bad date") + record("c", "2011-02-02", "the the") +
          record("a", "2011-02-02", "duplicate id") + record("d", "2011-02-02", "keeper"));
  CHECK_THROWS_AS(ts::load_corpus(path.string(), ts::CandidateMode::kHeadline, stop),
                  ts::PipelineError);  // 4 of 6 skipped is over the 10% budget

  const auto ok = temp_file("skips_ok.jsonl", [&] {
    std::string lines = record("a", "2011-02-01", "alpha news") + "broken line\n";
    for (int i = 0; i < 20; ++i) {
      lines += record("k" + std::to_string(i), "2011-02-02", "filler item");
    }
    return lines;
  }());
  const auto corpus = ts::load_corpus(ok.string(), ts::CandidateMode::kHeadline, stop);
  REQUIRE(corpus.skipped.size() == 1);
  CHECK(corpus.skipped[0].line == 2);
  CHECK(corpus.stats.total_paragraphs == 21);
}

TEST_CASE("load_corpus fatal cases") {
  const auto empty = temp_file("empty.jsonl", "\n\n");
  CHECK_THROWS_AS(ts::load_corpus(empty.string(), ts::CandidateMode::kHeadline, {}),
                  ts::PipelineError);
  CHECK_THROWS_AS(ts::load_corpus("/nonexistent/corpus.jsonl",
                                  ts::CandidateMode::kHeadline, {}),
                  ts::ValidationError);
  const auto any = temp_file("any.jsonl", record("a", "2011-02-01", "text"));
  CHECK_THROWS_AS(ts::load_corpus(any.string(), ts::CandidateMode::kNgramSentences, {}),
                  ts::ValidationError);
}

TEST_CASE("first_sentence mode keeps only the leading sentence") {
  const auto path = temp_file(
      "sentences.jsonl",
      record("a", "2011-02-01", "First sentence here. Second sentence there."));
  const auto corpus =
      ts::load_corpus(path.string(), ts::CandidateMode::kFirstSentence, {});
  REQUIRE(corpus.paragraphs.size() == 1);
  CHECK(corpus.paragraphs[0].text == "First sentence here");
  CHECK(corpus.paragraphs[0].tokens ==
        std::vector<std::string>{"first", "sentence", "here"});
}

TEST_CASE("100-record fixture matches an independent recount") {
  std::string lines;
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    const std::string date = ts::add_days("2011-03-01", i % 10);
    lines += record("p" + std::to_string(i), date,
                    "item " + std::to_string(rng() % 7) + " news");
  }
  const auto path = temp_file("hundred.jsonl", lines);
  const auto corpus = ts::load_corpus(path.string(), ts::CandidateMode::kHeadline, {});

  // Recount straight from the file, independently of load_corpus.
  std::ifstream in(path);
  std::string line;
  int count = 0;
  std::set<std::string> dates;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++count;
    const auto parsed = json::parse(line);
    dates.insert(parsed["date"].get<std::string>());
  }
  CHECK(corpus.stats.total_paragraphs == count);
  CHECK(corpus.days == static_cast<int>(dates.size()));
  CHECK(corpus.days == 10);
  CHECK(count == 100);
}

TEST_CASE("corpus invariants hold") {
  std::string lines;
  for (int i = 0; i < 40; ++i) {
    lines += record("r" + std::to_string(i), ts::add_days("2012-06-15", (i * 3) % 11),
                    "word" + std::to_string(i % 5) + " shared common");
  }
  const auto path = temp_file("inv.jsonl", lines);
  const auto a = ts::load_corpus(path.string(), ts::CandidateMode::kHeadline, {});
  const auto b = ts::load_corpus(path.string(), ts::CandidateMode::kHeadline, {});

  // Determinism: identical reloads.
  REQUIRE(a.paragraphs.size() == b.paragraphs.size());
  for (std::size_t i = 0; i < a.paragraphs.size(); ++i) {
    CHECK(a.paragraphs[i].id == b.paragraphs[i].id);
    CHECK(a.paragraphs[i].day_index == b.paragraphs[i].day_index);
    CHECK(a.paragraphs[i].tokens == b.paragraphs[i].tokens);
  }

  // Date order implies day order, and day indices are dense.
  std::set<int> days;
  for (const auto& p : a.paragraphs) days.insert(p.day_index);
  CHECK(*days.begin() == 1);
  CHECK(*days.rbegin() == a.days);
  CHECK(static_cast<int>(days.size()) == a.days);
  for (const auto& p : a.paragraphs) {
    for (const auto& q : a.paragraphs) {
      if (p.calendar_date < q.calendar_date) CHECK(p.day_index < q.day_index);
    }
  }

  // Every token of every paragraph has df >= 1.
  for (const auto& p : a.paragraphs) {
    for (const auto& t : p.tokens) {
      REQUIRE(a.stats.document_frequency.contains(t));
      CHECK(a.stats.document_frequency.at(t) >= 1);
      CHECK(a.stats.document_frequency.at(t) <= a.stats.total_paragraphs);
    }
  }
}

TEST_CASE("make_topic rejects stop-word-only names") {
  const auto& stop = ts::default_stopwords();
  const auto topic = ts::make_topic("BP Oil", "spill gulf", stop);
  CHECK(topic.tokens == std::vector<std::string>{"bp", "oil", "spill", "gulf"});
  CHECK_THROWS_AS(ts::make_topic("the of", "", stop), ts::ValidationError);
}

TEST_CASE("date helpers") {
  CHECK(ts::is_valid_iso_date("2012-02-29"));
  CHECK_FALSE(ts::is_valid_iso_date("2011-02-29"));
  CHECK_FALSE(ts::is_valid_iso_date("2011-13-01"));
  CHECK_FALSE(ts::is_valid_iso_date("11-02-01"));
  CHECK_FALSE(ts::is_valid_iso_date("2011-02-1 "));
  CHECK(ts::add_days("2011-02-27", 3) == "2011-03-02");
  CHECK(ts::add_days("2011-12-31", 1) == "2012-01-01");
  CHECK(ts::days_to_iso(ts::iso_to_days("1999-08-14")) == "1999-08-14");
}
