#include "lazardlab/gauge.hpp"

#include <numeric>

namespace lazard::gauge {

namespace {

BigInt big_pow(BigInt base, long long e) {
  BigInt r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace

Radius Radius::of(padic::i64 p, long long num, long long den) {
  if (den <= 0 || num < 0) fail(ErrorCode::InvalidArgument, "radius h must be a non-negative rational");
  long long g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {p, num / g, den / g};
}

std::string Radius::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Value Value::operator+(const Value& o) const {
  if (infinite || o.infinite) return inf();
  return {a + o.a, b + o.b, false};
}

Value Value::operator-(const Value& o) const {
  if (o.infinite) fail(ErrorCode::InvalidArgument, "cannot subtract an infinite gauge");
  if (infinite) return inf();
  return {a - o.a, b - o.b, false};
}

int sign(const Value& v, const Radius& r) {
  if (v.infinite) return 1;
  const int sa = sgn(v.a), sb = sgn(v.b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b have opposite signs: compare x = p^{-h} with t = -a/b > 0
  const Rational t = -v.a / v.b;
  // x > t  <=>  p^{-num} > t^den  <=>  denominator(t)^den > numerator(t)^den * p^num
  const BigInt lhs = big_pow(boost::multiprecision::denominator(t), r.den);
  const BigInt rhs = big_pow(boost::multiprecision::numerator(t), r.den) * big_pow(BigInt(r.p), r.num);
  const int x_vs_t = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  return sb * x_vs_t;
}

int compare(const Value& x, const Value& y, const Radius& r) {
  if (x.infinite && y.infinite) return 0;
  if (x.infinite) return 1;
  if (y.infinite) return -1;
  return sign(x - y, r);
}

Value min(const Value& x, const Value& y, const Radius& r) { return compare(x, y, r) <= 0 ? x : y; }

std::string rational_str(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1 ? boost::multiprecision::numerator(q).str() : q.str();
}

std::string to_string(const Value& v, const Radius& r) {
  if (v.infinite) return "inf";
  if (v.b == 0) return rational_str(v.a);
  const std::string x = std::to_string(r.p) + "^-" + (r.den == 1 ? r.str() : "(" + r.str() + ")");
  std::string out = v.a == 0 ? "" : rational_str(v.a) + (v.b > 0 ? " + " : " - ");
  Rational b = v.a == 0 ? v.b : abs(v.b);
  return out + rational_str(b) + "*" + x;
}

}  // namespace lazard::gauge
