#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "padicsym/padic.hpp"

using namespace padicsym;

namespace {

std::set<Int> squares_mod(Int m) {
  std::set<Int> out;
  for (Int y = 0; y < m; ++y) out.insert(y * y % m);
  return out;
}

// Primitive solution of a x^2 + b y^2 = z^2 mod p^3, found by search.
// With a, b of valuation <= 1 this decides the Hilbert symbol for odd p.
bool has_primitive_zero(Int a, Int b, Int p) {
  const Int m = p * p * p;
  std::set<Int> any_sq, unit_sq;
  for (Int z = 0; z < m; ++z) (z % p ? unit_sq : any_sq).insert(z * z % m);
  any_sq.insert(unit_sq.begin(), unit_sq.end());
  for (Int x = 0; x < m; ++x)
    for (Int y = 0; y < m; ++y) {
      const Int v = (a * (x * x % m) + b * (y * y % m)) % m;
      const bool primitive_xy = x % p || y % p;
      if ((primitive_xy ? any_sq : unit_sq).count(v)) return true;
    }
  return false;
}

}  // namespace

TEST(Ring, RejectsBadParameters) {
  EXPECT_THROW(Ring(2, 3), InvalidArgument);
  EXPECT_THROW(Ring(9, 3), InvalidArgument);
  EXPECT_THROW(Ring(3, 0), InvalidArgument);
  EXPECT_THROW(Ring(3, 60), InvalidArgument);
  EXPECT_NO_THROW(Ring(3, 39));
  EXPECT_THROW(Ring(3, 4).power(5), InvalidArgument);
}

TEST(Ring, ArithmeticWraps) {
  const Ring ring(5, 3);
  EXPECT_EQ(ring.modulus(), 125);
  EXPECT_EQ(ring.reduce(Int{-1}), 124);
  EXPECT_EQ(ring.mul(124, 124), 1);
  EXPECT_EQ(ring.pow(2, 100), 1);  // (Z/125)^x has order 100
  const Ring big(3, 39);
  const Int a = big.modulus() - 2;
  EXPECT_EQ(big.mul(a, a), 4);
}

TEST(Valuation, MatchesTrialDivision) {
  const Ring ring(3, 4);
  for (Int x = 1; x < ring.modulus(); ++x) {
    int v = 0;
    for (Int y = x; y % 3 == 0; y /= 3) ++v;
    EXPECT_EQ(val_p(ring, x), v);
    EXPECT_EQ(ring.mul(ring.power(v), unit_part(ring, x)), x);
  }
  EXPECT_EQ(val_p(ring, 0), 4);
  EXPECT_THROW(unit_part(ring, 0), ZeroAtPrecision);
}

TEST(Inverse, UnitsOnly) {
  const Ring ring(7, 3);
  for (Int x = 1; x < ring.modulus(); ++x) {
    if (x % 7 == 0) {
      EXPECT_THROW(inv_mod(ring, x), NotAUnit);
      continue;
    }
    EXPECT_EQ(ring.mul(x, inv_mod(ring, x)), 1);
  }
}

TEST(QuadraticCharacter, AgreesWithSquareTable) {
  for (Int p : {3, 5, 7, 11, 13, 101}) {
    const auto sq = squares_mod(p);
    for (Int x = -2 * p; x < 2 * p; ++x) {
      const Int r = ((x % p) + p) % p;
      const int want = r == 0 ? 0 : (sq.count(r) ? 1 : -1);
      EXPECT_EQ(to_int(chi(p, x)), want) << "p=" << p << " x=" << x;
    }
    EXPECT_EQ(epsilon(p), sq.count(p - 1) ? 1 : -1);
    EXPECT_EQ(to_int(chi(p, nonsquare(p))), -1);
  }
}

TEST(SquareRoot, HenselLifts) {
  for (Int p : {3, 5, 13, 17}) {
    const Ring ring(p, 5);
    for (Int y = 1; y < 200; ++y) {
      if (y % p == 0) continue;
      const Int x = ring.mul(y, y);
      const Int s = sqrt_unit(ring, x);
      EXPECT_EQ(ring.mul(s, s), x);
    }
    EXPECT_THROW(sqrt_unit(ring, nonsquare(p)), InvalidArgument);
  }
}

TEST(UnitGroup, GeneratorHasFullOrder) {
  for (Int p : {3, 5, 7}) {
    const Ring ring(p, 3);
    const Int g = unit_group_generator(ring);
    std::set<Int> seen;
    Int x = 1;
    for (Int i = 0; i < ring.modulus(); ++i, x = ring.mul(x, g)) seen.insert(x);
    EXPECT_EQ(static_cast<Int>(seen.size()), ring.modulus() - ring.modulus() / p);
  }
}

TEST(SquareClass, OfResidues) {
  const Ring ring(5, 4);
  EXPECT_EQ(SquareClass::of(ring, 1), SquareClass::one());
  EXPECT_EQ(SquareClass::of(ring, 2), SquareClass::r());
  EXPECT_EQ(SquareClass::of(ring, 5), SquareClass::p());
  EXPECT_EQ(SquareClass::of(ring, 10), SquareClass::pr());
  EXPECT_EQ(SquareClass::of(ring, 25 * 4), SquareClass::one());
  EXPECT_THROW(SquareClass::of(ring, 0), ZeroAtPrecision);
  EXPECT_EQ(SquareClass::minus_one(5), SquareClass::one());
  EXPECT_EQ(SquareClass::minus_one(7), SquareClass::r());
  for (SquareClass a : kAllSquareClasses) {
    EXPECT_EQ(SquareClass::parse(a.tag()), a);
    EXPECT_EQ(a * a, SquareClass::one());
  }
  EXPECT_THROW(SquareClass::parse("q"), InvalidArgument);
}

TEST(Hilbert, AgreesWithSearch) {
  for (Int p : {3, 5, 7}) {
    const Int r = nonsquare(p);
    const Int reps[4] = {1, r, p, p * r};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const int want = has_primitive_zero(reps[i], reps[j], p) ? 1 : -1;
        EXPECT_EQ(hilbert(kAllSquareClasses[i], kAllSquareClasses[j], p), want)
            << "p=" << p << " a=" << kAllSquareClasses[i].tag() << " b=" << kAllSquareClasses[j].tag();
      }
  }
}

TEST(RandomStream, ReproducibleAndSplit) {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(1000), b.uniform(1000));
  RandomStream c1 = RandomStream(42).split(3), c2 = RandomStream(42).split(3), d = RandomStream(42).split(4);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    const Int x = c1.uniform(1 << 30);
    EXPECT_EQ(x, c2.uniform(1 << 30));
    differs = differs || x != d.uniform(1 << 30);
  }
  EXPECT_TRUE(differs);
}

TEST(RandomStream, UniformDigits) {
  const Ring ring(3, 2);
  RandomStream rng(7);
  std::vector<int> counts(9);
  const int N = 90'000;
  for (int i = 0; i < N; ++i) ++counts[sample_uniform(ring, rng)];
  for (int c : counts) EXPECT_NEAR(c, N / 9.0, 5 * std::sqrt(N / 9.0));
}
