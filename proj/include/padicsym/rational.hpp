#pragma once

#include <gmpxx.h>

#include <string>

#include "padicsym/padic.hpp"

namespace padicsym {

using BigRational = mpq_class;
using BigInt = mpz_class;

/// base^e for any integer e.
BigRational rpow(Int base, long e);
BigInt ipow(Int base, unsigned long e);

/// Closed interval with rational endpoints.
struct Interval {
  BigRational lower;
  BigRational upper;

  static Interval point(const BigRational& x) { return {x, x}; }
  bool contains(const BigRational& x) const { return lower <= x && x <= upper; }
  BigRational width() const { return upper - lower; }
};

Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);

/// Distance from x to the interval; zero when contained.
BigRational distance(const Interval& iv, const BigRational& x);

inline BigRational abs(const BigRational& x) { return x < 0 ? BigRational(-x) : x; }

}  // namespace padicsym
