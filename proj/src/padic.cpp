#include "padicsym/padic.hpp"

#include <vector>

namespace padicsym {

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

OddPrime::OddPrime(Int p) : p_(p) {
  if (p < 3 || !is_prime(p))
    throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
}

Ring::Ring(OddPrime p, int K) : p_(p), K_(K), modulus_(1) {
  if (K < 1) throw InvalidArgument("precision K must be >= 1");
  constexpr Int limit = Int{1} << 62;
  for (int i = 0; i < K; ++i) {
    if (modulus_ > limit / p.value())
      throw InvalidArgument("p^K exceeds 2^62; lower K");
    modulus_ *= p.value();
  }
}

Int Ring::power(int k) const {
  if (k < 0 || k > K_) throw InvalidArgument("power exponent outside [0, K]");
  Int r = 1;
  for (int i = 0; i < k; ++i) r *= p();
  return r;
}

Int Ring::pow(Int a, std::uint64_t e) const {
  Int base = reduce(a), r = reduce(Int{1});
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

int val_p(const Ring& ring, Int x) {
  x = ring.reduce(x);
  if (x == 0) return ring.K();
  int v = 0;
  while (x % ring.p() == 0) {
    x /= ring.p();
    ++v;
  }
  return v;
}

Int unit_part(const Ring& ring, Int x) {
  x = ring.reduce(x);
  if (x == 0) throw ZeroAtPrecision("unit_part of a residue that is zero at precision");
  while (x % ring.p() == 0) x /= ring.p();
  return x;
}

Int inv_mod(const Ring& ring, Int x) {
  x = ring.reduce(x);
  if (x % ring.p() == 0) throw NotAUnit("inv_mod: " + std::to_string(x) + " is not a unit");
  // extended Euclid on (x, p^K)
  __int128 a = x, b = ring.modulus(), u = 1, v = 0;
  while (b) {
    __int128 q = a / b;
    a -= q * b;
    std::swap(a, b);
    u -= q * v;
    std::swap(u, v);
  }
  return ring.reduce(u);
}

namespace {

Int powmod(Int a, Int e, Int m) {
  __int128 r = 1 % m, b = ((a % m) + m) % m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<Int>(r);
}

Int sqrt_mod_p(Int x, Int p) {
  x %= p;
  if (x == 0) return 0;
  Int q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = nonsquare(p);
  Int m = s, c = powmod(z, q, p), t = powmod(x, q, p), r = powmod(x, (q + 1) / 2, p);
  while (t != 1) {
    Int i = 0, tt = t;
    while (tt != 1) {
      tt = static_cast<Int>(static_cast<__int128>(tt) * tt % p);
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = static_cast<Int>(static_cast<__int128>(b) * b % p);
    m = i;
    c = static_cast<Int>(static_cast<__int128>(b) * b % p);
    t = static_cast<Int>(static_cast<__int128>(t) * c % p);
    r = static_cast<Int>(static_cast<__int128>(r) * b % p);
  }
  return r;
}

}  // namespace

QuadChar chi(Int p, Int x) {
  Int r = ((x % p) + p) % p;
  if (r == 0) return QuadChar::Zero;
  return powmod(r, (p - 1) / 2, p) == 1 ? QuadChar::Plus : QuadChar::Minus;
}

int epsilon(Int p) { return to_int(chi(p, -1)); }

Int nonsquare(Int p) {
  for (Int r = 2; r < p; ++r)
    if (chi(p, r) == QuadChar::Minus) return r;
  throw InvalidArgument("no quadratic non-residue mod " + std::to_string(p));
}

Int unit_group_generator(const Ring& ring) {
  const Int p = ring.p();
  Int phi = p - 1;
  std::vector<Int> factors;
  for (Int d = 2, m = phi; m > 1; ++d) {
    if (d * d > m) {
      factors.push_back(m);
      break;
    }
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  Int g = 2;
  for (;; ++g) {
    bool ok = true;
    for (Int f : factors)
      if (powmod(g, phi / f, p) == 1) ok = false;
    if (ok) break;
  }
  if (ring.K() >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return ring.reduce(g);
}

Int sqrt_unit(const Ring& ring, Int x) {
  x = ring.reduce(x);
  if (chi(ring, x) != QuadChar::Plus) throw InvalidArgument("sqrt_unit: argument is not a unit square");
  Int y = sqrt_mod_p(x, ring.p());
  // Newton: y <- y - (y^2 - x)/(2y); precision doubles each step
  for (int prec = 1; prec < ring.K(); prec *= 2) {
    Int f = ring.sub(ring.mul(y, y), x);
    y = ring.sub(y, ring.mul(f, inv_mod(ring, ring.mul(2, y))));
  }
  return y;
}

SquareClass SquareClass::from_parts(int valuation, int unit_char) {
  return {valuation % 2 != 0, unit_char < 0};
}

SquareClass SquareClass::of(const Ring& ring, Int x) {
  int v = val_p(ring, x);
  if (v >= ring.K()) throw ZeroAtPrecision("square class of zero");
  return from_parts(v, to_int(chi(ring, unit_part(ring, x))));
}

SquareClass SquareClass::minus_one(Int p) { return {false, epsilon(p) < 0}; }

SquareClass SquareClass::parse(std::string_view tag) {
  if (tag == "1") return one();
  if (tag == "r") return r();
  if (tag == "p") return p();
  if (tag == "pr") return pr();
  throw InvalidArgument("square class must be one of 1, r, p, pr");
}

std::string SquareClass::tag() const {
  static const char* names[4] = {"1", "r", "p", "pr"};
  return names[index()];
}

int hilbert(SquareClass a, SquareClass b, Int p) {
  const int alpha = a.odd_valuation(), beta = b.odd_valuation();
  int s = 1;
  if (alpha && beta) s *= epsilon(p);
  if (beta) s *= a.unit_char();
  if (alpha) s *= b.unit_char();
  return s;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

RandomStream RandomStream::split(std::uint64_t child) const {
  return RandomStream(seed_, splitmix(stream_ ^ splitmix(child + 1)));
}

Int RandomStream::uniform(Int bound) {
  std::uniform_int_distribution<Int> dist(0, bound - 1);
  return dist(engine_);
}

Int sample_uniform(const Ring& ring, RandomStream& rng) {
  Int x = 0;
  for (int i = ring.K() - 1; i >= 0; --i) x = x * ring.p() + rng.uniform(ring.p());
  return x;
}

}  // namespace padicsym
