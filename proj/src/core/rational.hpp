#ifndef SAMPLUS_CORE_RATIONAL_HPP
#define SAMPLUS_CORE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace samplus {

// Exact arithmetic for probabilities. Parsed literals ("0.9", "1/3") and
// empirical ratios are kept as rationals; only logarithmic/square-root
// quantities live in doubles.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "12", "0.25" or "1/3" (no sign, no exponent). Returns nothing on
// any other shape.
std::optional<Rat> parse_rational(std::string_view text);

// Renders with exactly `digits` decimal places, rounding half away from zero.
// format_fixed(1/3, 4) == "0.3333", format_fixed(1, 6) == "1.000000".
std::string format_fixed(const Rat& value, int digits);

// Exact binary expansion of a finite double.
Rat rat_from_double(double x);

double to_double(const Rat& r);

}  // namespace samplus

#endif
