#include "hbb/common.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace hbb {

ExtExponent::ExtExponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("exponent must be a real number >= 1 or inf");
  }
  if (std::isinf(p)) {
    infinite_ = true;
  } else {
    value_ = p;
  }
}

ExtExponent ExtExponent::parse(std::string_view text) {
  std::string lower;
  for (char ch : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "inf" || lower == "infinity" || lower == "oo") return infinity();
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
  }
  return ExtExponent(v);
}

std::string ExtExponent::to_string() const {
  return infinite_ ? std::string("inf") : format_double(value_);
}

ExtExponent conjugate(const ExtExponent& p) {
  if (p.is_infinite()) return ExtExponent(1.0);
  if (p.is_one()) return ExtExponent::infinity();
  return ExtExponent(p.value() / (p.value() - 1.0));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace hbb
