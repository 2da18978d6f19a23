#include <doctest.h>

#include <random>

#include "ppcorpus/dates.hpp"
#include "ppcorpus/rounding.hpp"

using namespace ppcorpus;

TEST_CASE("parse_year_month accepts YYYY-MM and YYYY-MM-DD") {
  auto ym = parse_year_month("2021-09");
  REQUIRE(ym.has_value());
  CHECK(ym->year == 2021);
  CHECK(ym->month == 9);
  CHECK_FALSE(ym->day.has_value());

  auto ymd = parse_year_month("2020-06-15");
  REQUIRE(ymd.has_value());
  CHECK(ymd->year == 2020);
  CHECK(ymd->month == 6);
  CHECK(ymd->day == 15);
}

TEST_CASE("parse_year_month rejects malformed input") {
  CHECK_FALSE(parse_year_month("").has_value());
  CHECK_FALSE(parse_year_month("2021").has_value());
  CHECK_FALSE(parse_year_month("2021-13").has_value());
  CHECK_FALSE(parse_year_month("2021-00").has_value());
  CHECK_FALSE(parse_year_month("2021/09").has_value());
  CHECK_FALSE(parse_year_month("21-09").has_value());
  CHECK_FALSE(parse_year_month("2021-9").has_value());
  CHECK_FALSE(parse_year_month("2021-02-30").has_value());
  CHECK_FALSE(parse_year_month("2021-02-xx").has_value());
  CHECK_FALSE(parse_year_month("2021-02-01extra").has_value());
}

TEST_CASE("to_string round-trips") {
  CHECK(to_string(*parse_year_month("2021-09")) == "2021-09");
  CHECK(to_string(*parse_year_month("2020-06-03")) == "2020-06-03");
}

TEST_CASE("months_between works at month precision") {
  YearMonth a = *parse_year_month("2020-06");
  YearMonth b = *parse_year_month("2021-09");
  CHECK(months_between(a, b) == 15);
  CHECK(months_between(b, a) == -15);
  CHECK(months_between(a, a) == 0);

  // Days are ignored on purpose.
  YearMonth a_day = *parse_year_month("2020-06-30");
  YearMonth b_day = *parse_year_month("2021-09-01");
  CHECK(months_between(a_day, b_day) == 15);
  CHECK(a == a_day);
}

TEST_CASE("months_between oracle: step-by-month counting") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> year(2000, 2030);
  std::uniform_int_distribution<int> month(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    YearMonth a{year(rng), month(rng), std::nullopt};
    YearMonth b{year(rng), month(rng), std::nullopt};
    // Independent oracle: walk from a to b one month at a time.
    int steps = 0;
    YearMonth cur = a;
    while (cur < b) {
      cur.month += 1;
      if (cur.month == 13) {
        cur.month = 1;
        cur.year += 1;
      }
      ++steps;
    }
    while (cur > b) {
      cur.month -= 1;
      if (cur.month == 0) {
        cur.month = 12;
        cur.year -= 1;
      }
      --steps;
    }
    CHECK(months_between(a, b) == steps);
  }
}

TEST_CASE("round_half_up resolves exact halves upward") {
  CHECK(round_half_up(0.005, 2) == doctest::Approx(0.01));
  CHECK(round_half_up(0.015, 2) == doctest::Approx(0.02));
  CHECK(round_half_up(0.025, 2) == doctest::Approx(0.03));
  CHECK(round_half_up(2.5, 0) == doctest::Approx(3.0));
  CHECK(round_half_up(-2.5, 0) == doctest::Approx(-2.0));  // half-up, not half-away
  CHECK(round_half_up(16.45, 1) == doctest::Approx(16.5));
  CHECK(round_half_up(85.714285, 2) == doctest::Approx(85.71));
  CHECK(round_half_up(38.095238, 2) == doctest::Approx(38.10));
  CHECK(round_half_up(45.4545454, 2) == doctest::Approx(45.45));
}

TEST_CASE("round_half_up leaves already-rounded values alone") {
  for (int i = 0; i <= 10000; ++i) {
    double v = i / 100.0;
    CHECK(round_half_up(v, 2) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("format_decimal renders with either separator") {
  CHECK(format_decimal(16.5, 1) == "16.5");
  CHECK(format_decimal(16.5, 1, ',') == "16,5");
  CHECK(format_decimal(85.714285, 2) == "85.71");
  CHECK(format_decimal(0.0, 2) == "0.00");
  CHECK(format_decimal(100.0, 2, ',') == "100,00");
  CHECK(format_decimal(9.52381, 2, ',') == "9,52");
  CHECK(format_decimal(-1.25, 1) == "-1.2");  // half-up on the signed value
}

TEST_CASE("format_decimal agrees with round_half_up") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    double v = dist(rng);
    double rounded = round_half_up(v, 2);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", rounded);
    CHECK(format_decimal(v, 2) == buf);
  }
}
