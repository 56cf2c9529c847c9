#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracdim {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// A numeric parameter as it appeared in an input document. Quoted inputs
// ("3/4", "0.25") keep their exact rational value next to the double; bare
// JSON numbers are double-only. Comparisons are exact when both operands carry
// rationals and fall back to a 1e-12 relative tolerance otherwise, which is
// what decides carpet class boundaries.
struct Num {
  double val = 0.0;
  std::optional<Rational> exact;

  bool is_exact() const { return exact.has_value(); }
};

inline constexpr double kRelTol = 1e-12;

double to_double(const Rational& q);

Num num_of(double v);
Num num_of(Rational q);
Num num_of(long long p, long long q);

// Parses "p/q", an integer, or a plain decimal literal. Always exact.
Num parse_num(const std::string& text);

// -1, 0, +1.
int num_cmp(const Num& a, const Num& b);
bool num_eq(const Num& a, const Num& b);
bool num_lt(const Num& a, const Num& b);
bool num_le(const Num& a, const Num& b);

Num operator+(const Num& a, const Num& b);
Num operator-(const Num& a, const Num& b);
Num operator*(const Num& a, const Num& b);
Num operator/(const Num& a, const Num& b);

bool operator==(const Num& a, const Num& b);

// Round-trip text: "p/q" when exact, shortest re-readable decimal otherwise.
std::string format_num(const Num& n);
std::string format_double(double v);

}  // namespace fracdim
