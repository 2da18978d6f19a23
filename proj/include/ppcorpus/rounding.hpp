#pragma once

#include <string>

namespace ppcorpus {

// Half-up rounding at a fixed number of decimal places (0.005 -> 0.01 at
// two decimals). All report percentages and month averages go through this.
double round_half_up(double value, int decimals);

// Fixed-point rendering with a configurable decimal separator ('.' in data
// files, ',' for paper-style tables). Rounds half-up first.
std::string format_decimal(double value, int decimals, char separator = '.');

}  // namespace ppcorpus
