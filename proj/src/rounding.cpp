#include "ppcorpus/rounding.hpp"

#include <cmath>
#include <cstdio>

namespace ppcorpus {

double round_half_up(double value, int decimals) {
  long double scale = std::pow(10.0L, static_cast<long double>(decimals));
  long double scaled = static_cast<long double>(value) * scale;
  // Nudge past representation error so exact halves (e.g. 16.45 stored as
  // 16.44999...) land on the intended side. Half-up means toward +inf.
  long double eps = std::fabs(scaled) * 1e-12L;
  long double rounded = std::floor(scaled + 0.5L + eps);
  return static_cast<double>(rounded / scale);
}

std::string format_decimal(double value, int decimals, char separator) {
  double rounded = round_half_up(value, decimals);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  std::string out = buf;
  if (separator != '.') {
    if (auto pos = out.find('.'); pos != std::string::npos) out[pos] = separator;
  }
  return out;
}

}  // namespace ppcorpus
