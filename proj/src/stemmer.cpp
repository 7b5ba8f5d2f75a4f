#include "ts/stemmer.hpp"

#include <array>
#include <string_view>

namespace ts {

namespace {

// The algorithm works on w[0..end). `end` shrinks as suffixes are removed.

bool is_consonant(const std::string& w, std::size_t i) {
  switch (w[i]) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
      return false;
    case 'y':
      return i == 0 ? true : !is_consonant(w, i - 1);
    default:
      return true;
  }
}

// m: the number of VC sequences in w[0..end), i.e. [C](VC)^m[V].
int measure(const std::string& w, std::size_t end) {
  int m = 0;
  std::size_t i = 0;
  while (i < end && is_consonant(w, i)) ++i;
  while (i < end) {
    while (i < end && !is_consonant(w, i)) ++i;
    if (i == end) break;
    ++m;
    while (i < end && is_consonant(w, i)) ++i;
  }
  return m;
}

bool has_vowel(const std::string& w, std::size_t end) {
  for (std::size_t i = 0; i < end; ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const std::string& w, std::size_t end) {
  return end >= 2 && w[end - 1] == w[end - 2] && is_consonant(w, end - 1);
}

// *o: stem ends consonant-vowel-consonant where the final consonant is not
// w, x or y.
bool ends_cvc(const std::string& w, std::size_t end) {
  if (end < 3) return false;
  if (!is_consonant(w, end - 3) || is_consonant(w, end - 2) ||
      !is_consonant(w, end - 1)) {
    return false;
  }
  const char c = w[end - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::size_t end, std::string_view suffix) {
  return end >= suffix.size() &&
         std::string_view(w).substr(end - suffix.size(), suffix.size()) == suffix;
}

struct Stemmer {
  std::string w;
  std::size_t end;

  std::size_t stem_end(std::string_view suffix) const { return end - suffix.size(); }

  void replace(std::string_view suffix, std::string_view with) {
    const std::size_t base = stem_end(suffix);
    w.replace(base, w.size() - base, with);
    end = base + with.size();
    w.resize(end);
  }

  // Apply `suffix -> with` when m(stem) > threshold. Returns true when the
  // suffix matched (whether or not the rule fired), callers stop scanning.
  bool rule(std::string_view suffix, std::string_view with, int m_above) {
    if (!ends_with(w, end, suffix)) return false;
    if (measure(w, stem_end(suffix)) > m_above) replace(suffix, with);
    return true;
  }

  void step_1a() {
    if (ends_with(w, end, "sses")) {
      replace("sses", "ss");
    } else if (ends_with(w, end, "ies")) {
      replace("ies", "i");
    } else if (ends_with(w, end, "ss")) {
      // keep
    } else if (ends_with(w, end, "s")) {
      replace("s", "");
    }
  }

  void step_1b() {
    if (ends_with(w, end, "eed")) {
      if (measure(w, stem_end("eed")) > 0) replace("eed", "ee");
      return;
    }
    bool stripped = false;
    if (ends_with(w, end, "ed") && has_vowel(w, stem_end("ed"))) {
      replace("ed", "");
      stripped = true;
    } else if (ends_with(w, end, "ing") && has_vowel(w, stem_end("ing"))) {
      replace("ing", "");
      stripped = true;
    }
    if (!stripped) return;

    if (ends_with(w, end, "at") || ends_with(w, end, "bl") || ends_with(w, end, "iz")) {
      replace("", "e");
    } else if (ends_double_consonant(w, end)) {
      const char c = w[end - 1];
      if (c != 'l' && c != 's' && c != 'z') replace(std::string_view(&c, 1), "");
    } else if (measure(w, end) == 1 && ends_cvc(w, end)) {
      replace("", "e");
    }
  }

  void step_1c() {
    if (ends_with(w, end, "y") && has_vowel(w, stem_end("y"))) {
      w[end - 1] = 'i';
    }
  }

  void step_2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 20> rules{
        {{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
         {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
         {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
         {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
         {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"}}};
    for (const auto& [suffix, with] : rules) {
      if (rule(suffix, with, 0)) return;
    }
  }

  void step_3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 7> rules{
        {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
         {"ical", "ic"},  {"ful", ""},   {"ness", ""}}};
    for (const auto& [suffix, with] : rules) {
      if (rule(suffix, with, 0)) return;
    }
  }

  void step_4() {
    // Longest suffix first inside the ement/ment/ent family.
    static constexpr std::array<std::string_view, 19> suffixes{
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    for (const auto suffix : suffixes) {
      if (!ends_with(w, end, suffix)) continue;
      const std::size_t base = stem_end(suffix);
      if (suffix == "ion" && !(base >= 1 && (w[base - 1] == 's' || w[base - 1] == 't'))) {
        return;
      }
      if (measure(w, base) > 1) replace(suffix, "");
      return;
    }
  }

  void step_5a() {
    if (!ends_with(w, end, "e")) return;
    const int m = measure(w, end - 1);
    if (m > 1 || (m == 1 && !ends_cvc(w, end - 1))) {
      replace("e", "");
    }
  }

  void step_5b() {
    if (measure(w, end) > 1 && ends_double_consonant(w, end) && w[end - 1] == 'l') {
      --end;
      w.resize(end);
    }
  }
};

}  // namespace

std::string porter_stem(std::string word) {
  if (word.size() <= 2) return word;
  Stemmer s{std::move(word), 0};
  s.end = s.w.size();
  s.step_1a();
  s.step_1b();
  s.step_1c();
  s.step_2();
  s.step_3();
  s.step_4();
  s.step_5a();
  s.step_5b();
  s.w.resize(s.end);
  return std::move(s.w);
}

}  // namespace ts
