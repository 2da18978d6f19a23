#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace ppcorpus {

// Calendar month. Day-of-month may be recorded for provenance but all
// arithmetic works at month precision.
struct YearMonth {
  int year = 0;
  int month = 0;  // 1..12
  std::optional<int> day;

  friend std::strong_ordering operator<=>(const YearMonth& a, const YearMonth& b) {
    if (auto c = a.year <=> b.year; c != 0) return c;
    return a.month <=> b.month;  // day ignored on purpose
  }
  friend bool operator==(const YearMonth& a, const YearMonth& b) {
    return (a <=> b) == 0;
  }
};

// Parses "YYYY-MM" or "YYYY-MM-DD". Returns nullopt on anything else.
std::optional<YearMonth> parse_year_month(std::string_view text);

// "YYYY-MM" (or "YYYY-MM-DD" when a day was recorded).
std::string to_string(const YearMonth& ym);

// Signed calendar-month difference b - a, ignoring days.
int months_between(const YearMonth& a, const YearMonth& b);

}  // namespace ppcorpus
