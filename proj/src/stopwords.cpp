#include "ts/stopwords.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ts/errors.hpp"

namespace ts {

namespace {

// Snowball English list, plus the fragments a punctuation-splitting tokenizer
// leaves behind from contractions (don't -> don + t).
constexpr const char* kDefaultList = R"(i me my myself we our ours ourselves
you your yours yourself yourselves
he him his himself she her hers herself it its itself
they them their theirs themselves
what which who whom this that these those
am is are was were be been being
have has had having do does did doing
would should could ought
a an the and but if or because as until while
of at by for with about against between into through during
before after above below to from up down in out on off over under
again further then once here there when where why how
all any both each few more most other some such
no nor not only own same so than too very
s t m d ll re ve don isn aren wasn weren hasn haven hadn doesn didn won
wouldn shan shouldn can cannot couldn mustn let
)";

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::unordered_set<std::string> parse_stream(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string word;
    while (fields >> word) {
      words.insert(lower(trim(word)));
    }
  }
  words.erase("");
  return words;
}

}  // namespace

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> words = [] {
    std::istringstream in(kDefaultList);
    return parse_stream(in);
  }();
  return words;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("stop-word file not found: " + path);
  }
  return parse_stream(in);
}

}  // namespace ts
