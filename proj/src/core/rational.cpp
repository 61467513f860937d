#include "core/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace samplus {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// decimal only; cpp_int's string constructor would read leading zeros as octal
BigInt from_digits(std::string_view s) {
  BigInt n = 0;
  for (char c : s) n = n * 10 + (c - '0');
  return n;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d = from_digits(den);
    if (d == 0) return std::nullopt;
    return Rat(from_digits(num), d);
  }
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt n = from_digits(whole) * scale + from_digits(frac);
    return Rat(n, scale);
  }
  if (!all_digits(text)) return std::nullopt;
  return Rat(from_digits(text));
}

std::string format_fixed(const Rat& value, int digits) {
  bool negative = value < 0;
  Rat v = negative ? Rat(-value) : value;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt num = numerator(v) * scale;
  BigInt den = denominator(v);
  // round half away from zero
  BigInt n = (num * 2 + den) / (den * 2);
  BigInt whole = n / scale;
  BigInt frac = n % scale;
  std::string frac_str = frac.str();
  std::string out = (negative && n != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    out += ".";
    out += std::string(static_cast<std::size_t>(digits) - frac_str.size(), '0');
    out += frac_str;
  }
  return out;
}

Rat rat_from_double(double x) {
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral
  std::int64_t m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rat r(m);
  if (exp > 0) {
    r *= Rat(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rat(BigInt(1) << -exp);
  }
  return r;
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace samplus
