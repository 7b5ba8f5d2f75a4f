#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ts {

/// Strict ISO-8601 calendar date check (YYYY-MM-DD, real calendar day).
bool is_valid_iso_date(std::string_view s);

/// Days since 1970-01-01 for a valid ISO date.
std::int64_t iso_to_days(std::string_view s);

/// Inverse of iso_to_days.
std::string days_to_iso(std::int64_t days);

std::string add_days(std::string_view iso, int delta);

}  // namespace ts
