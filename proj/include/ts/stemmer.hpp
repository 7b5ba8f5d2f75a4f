#pragma once

#include <string>

namespace ts {

/// Porter's suffix-stripping stemmer (the classic 1980 algorithm).
/// Expects a lowercase word; words of length <= 2 pass through unchanged.
std::string porter_stem(std::string word);

}  // namespace ts
