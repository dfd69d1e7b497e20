#pragma once

// Arithmetic in Z/p^K for odd primes p.
//
// Residues are plain std::int64_t values in [0, p^K). The modulus is capped
// below 2^62 so that products fit in __int128 before reduction.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "padicsym/error.hpp"

namespace padicsym {

using Int = std::int64_t;

bool is_prime(Int n);

class OddPrime {
 public:
  explicit OddPrime(Int p);
  Int value() const { return p_; }
  friend bool operator==(OddPrime, OddPrime) = default;

 private:
  Int p_;
};

/// The ring Z/p^K. K plays the role of the working p-adic precision.
class Ring {
 public:
  Ring(OddPrime p, int K);
  Ring(Int p, int K) : Ring(OddPrime(p), K) {}

  Int p() const { return p_.value(); }
  OddPrime prime() const { return p_; }
  int K() const { return K_; }
  Int modulus() const { return modulus_; }
  /// p^k for 0 <= k <= K.
  Int power(int k) const;

  Int reduce(Int x) const {
    Int r = x % modulus_;
    return r < 0 ? r + modulus_ : r;
  }
  Int reduce(__int128 x) const {
    auto r = static_cast<Int>(x % modulus_);
    return r < 0 ? r + modulus_ : r;
  }
  Int add(Int a, Int b) const { return reduce(a + b); }
  Int sub(Int a, Int b) const { return reduce(a - b); }
  Int neg(Int a) const { return reduce(-a); }
  Int mul(Int a, Int b) const {
    return reduce(static_cast<__int128>(a) * static_cast<__int128>(b));
  }
  Int pow(Int a, std::uint64_t e) const;

  /// The same prime at a different precision.
  Ring with_precision(int K) const { return Ring(p_, K); }

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  OddPrime p_;
  int K_;
  Int modulus_;
};

/// Largest k <= K with p^k | x; K when x is zero at this precision.
int val_p(const Ring& ring, Int x);

/// Unit u with p^val_p(x) * u == x (mod p^K).
Int unit_part(const Ring& ring, Int x);

Int inv_mod(const Ring& ring, Int x);

/// Quadratic character of a p-adic integer: +1 unit square, -1 unit
/// non-square, 0 when p | x.
enum class QuadChar : int { Minus = -1, Zero = 0, Plus = 1 };

inline int to_int(QuadChar c) { return static_cast<int>(c); }

/// Legendre symbol of an arbitrary integer modulo the odd prime p.
QuadChar chi(Int p, Int x);
inline QuadChar chi(const Ring& ring, Int x) { return chi(ring.p(), ring.reduce(x)); }

/// chi(-1).
int epsilon(Int p);

/// The smallest positive quadratic non-residue mod p; the fixed non-square r.
Int nonsquare(Int p);

/// A generator of (Z/p^K)^x.
Int unit_group_generator(const Ring& ring);

/// Square root of a unit square modulo p^K (Tonelli-Shanks, then Hensel).
Int sqrt_unit(const Ring& ring, Int x);

/// Element of Q_p^x / (Q_p^x)^2 = {1, r, p, pr}.
class SquareClass {
 public:
  constexpr SquareClass() = default;
  constexpr SquareClass(bool odd_valuation, bool nonsquare_unit)
      : odd_(odd_valuation), nonsquare_(nonsquare_unit) {}

  static constexpr SquareClass one() { return {false, false}; }
  static constexpr SquareClass r() { return {false, true}; }
  static constexpr SquareClass p() { return {true, false}; }
  static constexpr SquareClass pr() { return {true, true}; }

  /// Class of p^v * u with chi(u) = unit_char.
  static SquareClass from_parts(int valuation, int unit_char);
  /// Class of a nonzero residue; throws ZeroAtPrecision for zero.
  static SquareClass of(const Ring& ring, Int x);
  /// Class of the rational integer -1.
  static SquareClass minus_one(Int p);

  /// Parses "1", "r", "p", "pr".
  static SquareClass parse(std::string_view tag);

  bool odd_valuation() const { return odd_; }
  bool nonsquare_unit() const { return nonsquare_; }
  /// +1 or -1: character of the unit part.
  int unit_char() const { return nonsquare_ ? -1 : 1; }
  int index() const { return (odd_ ? 2 : 0) + (nonsquare_ ? 1 : 0); }
  std::string tag() const;

  friend constexpr SquareClass operator*(SquareClass a, SquareClass b) {
    return {a.odd_ != b.odd_, a.nonsquare_ != b.nonsquare_};
  }
  friend bool operator==(SquareClass, SquareClass) = default;
  friend auto operator<=>(SquareClass a, SquareClass b) { return a.index() <=> b.index(); }

 private:
  bool odd_ = false;
  bool nonsquare_ = false;
};

inline constexpr SquareClass kAllSquareClasses[4] = {SquareClass::one(), SquareClass::r(),
                                                     SquareClass::p(), SquareClass::pr()};

/// Hilbert symbol <a, b> over Q_p, p odd, valued in {+1, -1}.
int hilbert(SquareClass a, SquareClass b, Int p);

/// Seeded random source. Children produced by split() are seeded from the
/// parent's seed and a stream index, so a fixed (seed, index) always yields
/// the same child regardless of how many siblings exist.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  RandomStream split(std::uint64_t child) const;

  /// Uniform integer in [0, bound).
  Int uniform(Int bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Haar measure on Z_p reduced mod p^K: K independent base-p digits.
Int sample_uniform(const Ring& ring, RandomStream& rng);

}  // namespace padicsym
