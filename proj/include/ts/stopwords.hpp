#pragma once

#include <string>
#include <unordered_set>

namespace ts {

/// Built-in English stop list (Snowball list plus contraction fragments).
/// The same list ships as data/stopwords_en.txt for runs that want to edit it.
const std::unordered_set<std::string>& default_stopwords();

/// Parse a stop-word file: one token per line, '#' starts a comment,
/// blank lines ignored. Entries are lowercased to match tokenizer output.
std::unordered_set<std::string> load_stopwords(const std::string& path);

}  // namespace ts
