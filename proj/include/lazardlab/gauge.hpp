#pragma once

// Exact values of the form a + b * p^{-h} with rational a, b. The weighted
// valuations of distributions and the Amice profile live in this set; for a
// non-integral h the number p^{-h} is irrational, so comparisons reduce to
// exact rational power comparisons instead of floating point.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "lazardlab/padic.hpp"

namespace lazard::gauge {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// h = num / den >= 0 together with the prime.
struct Radius {
  padic::i64 p = 3;
  long long num = 0;
  long long den = 1;

  static Radius of(padic::i64 p, long long num, long long den = 1);
  std::string str() const;
};

/// a + b * p^{-h}; `infinite` stands for +infinity (the zero element).
struct Value {
  Rational a = 0;
  Rational b = 0;
  bool infinite = false;

  static Value inf() { return {0, 0, true}; }
  Value operator+(const Value& o) const;
  Value operator-(const Value& o) const;
};

/// Sign of a + b * p^{-h}.
int sign(const Value& v, const Radius& r);
/// -1, 0, 1 as x <, =, > y.
int compare(const Value& x, const Value& y, const Radius& r);
Value min(const Value& x, const Value& y, const Radius& r);
std::string to_string(const Value& v, const Radius& r);
std::string rational_str(const Rational& q);

}  // namespace lazard::gauge
