#include "ppcorpus/dates.hpp"

#include <charconv>
#include <cstdio>

namespace ppcorpus {

namespace {

std::optional<int> parse_int_field(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<YearMonth> parse_year_month(std::string_view text) {
  if (text.size() != 7 && text.size() != 10) return std::nullopt;
  if (text[4] != '-') return std::nullopt;
  if (text.size() == 10 && text[7] != '-') return std::nullopt;

  auto year = parse_int_field(text.substr(0, 4));
  auto month = parse_int_field(text.substr(5, 2));
  if (!year || !month || *month < 1 || *month > 12) return std::nullopt;

  YearMonth ym{*year, *month, std::nullopt};
  if (text.size() == 10) {
    static constexpr int kDaysInMonth[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int limit = kDaysInMonth[*month - 1];
    bool leap = (*year % 4 == 0 && *year % 100 != 0) || *year % 400 == 0;
    if (*month == 2 && leap) limit = 29;
    auto day = parse_int_field(text.substr(8, 2));
    if (!day || *day < 1 || *day > limit) return std::nullopt;
    ym.day = *day;
  }
  return ym;
}

std::string to_string(const YearMonth& ym) {
  char buf[16];
  if (ym.day) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", ym.year, ym.month, *ym.day);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
  }
  return buf;
}

int months_between(const YearMonth& a, const YearMonth& b) {
  return (b.year - a.year) * 12 + (b.month - a.month);
}

}  // namespace ppcorpus
