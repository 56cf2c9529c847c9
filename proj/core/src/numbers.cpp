#include "fracdim/numbers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "fracdim/errors.hpp"

namespace fracdim {

double to_double(const Rational& q) { return q.convert_to<double>(); }

Num num_of(double v) { return Num{v, std::nullopt}; }

Num num_of(Rational q) {
  Num n;
  n.val = to_double(q);
  n.exact = std::move(q);
  return n;
}

Num num_of(long long p, long long q) { return num_of(Rational(p, q)); }

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Rational parse_decimal(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.erase(s.begin());
  }
  auto dot = s.find('.');
  std::string ip = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fp = dot == std::string::npos ? std::string() : s.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw input_error("empty numeric literal '" + text + "'");
  if (!ip.empty() && !all_digits(ip)) throw input_error("bad numeric literal '" + text + "'");
  if (!fp.empty() && !all_digits(fp)) throw input_error("bad numeric literal '" + text + "'");
  BigInt num = 0;
  for (char c : ip) num = num * 10 + (c - '0');
  BigInt den = 1;
  for (char c : fp) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational q(num, den);
  if (neg) q = -q;
  return q;
}

}  // namespace

Num parse_num(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string ps = text.substr(0, slash);
    std::string qs = text.substr(slash + 1);
    bool neg = false;
    if (!ps.empty() && (ps[0] == '+' || ps[0] == '-')) {
      neg = ps[0] == '-';
      ps.erase(ps.begin());
    }
    if (!all_digits(ps) || !all_digits(qs))
      throw input_error("bad rational literal '" + text + "'");
    BigInt p = 0, q = 0;
    for (char c : ps) p = p * 10 + (c - '0');
    for (char c : qs) q = q * 10 + (c - '0');
    if (q == 0) throw input_error("zero denominator in '" + text + "'");
    Rational r(p, q);
    if (neg) r = -r;
    return num_of(r);
  }
  return num_of(parse_decimal(text));
}

int num_cmp(const Num& a, const Num& b) {
  if (a.exact && b.exact) {
    if (*a.exact < *b.exact) return -1;
    if (*a.exact > *b.exact) return 1;
    return 0;
  }
  double scale = std::max(std::fabs(a.val), std::fabs(b.val));
  if (std::fabs(a.val - b.val) <= kRelTol * scale) return 0;
  return a.val < b.val ? -1 : 1;
}

bool num_eq(const Num& a, const Num& b) { return num_cmp(a, b) == 0; }
bool num_lt(const Num& a, const Num& b) { return num_cmp(a, b) < 0; }
bool num_le(const Num& a, const Num& b) { return num_cmp(a, b) <= 0; }

Num operator+(const Num& a, const Num& b) {
  if (a.exact && b.exact) return num_of(Rational(*a.exact + *b.exact));
  return num_of(a.val + b.val);
}

Num operator-(const Num& a, const Num& b) {
  if (a.exact && b.exact) return num_of(Rational(*a.exact - *b.exact));
  return num_of(a.val - b.val);
}

Num operator*(const Num& a, const Num& b) {
  if (a.exact && b.exact) return num_of(Rational(*a.exact * *b.exact));
  return num_of(a.val * b.val);
}

Num operator/(const Num& a, const Num& b) {
  if (a.exact && b.exact) {
    if (*b.exact == 0) throw numeric_error("division by zero");
    return num_of(Rational(*a.exact / *b.exact));
  }
  if (b.val == 0.0) throw numeric_error("division by zero");
  return num_of(a.val / b.val);
}

bool operator==(const Num& a, const Num& b) {
  if (a.exact.has_value() != b.exact.has_value()) return false;
  if (a.exact) return *a.exact == *b.exact;
  return a.val == b.val;
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_num(const Num& n) {
  if (n.exact) {
    const Rational& q = *n.exact;
    std::string num = numerator(q).str();
    if (denominator(q) == 1) return num;
    return num + "/" + denominator(q).str();
  }
  return format_double(n.val);
}

}  // namespace fracdim
