#include "padicsym/localglobal.hpp"

#include <mpfr.h>

#include <cmath>

#include "padicsym/densities.hpp"

namespace padicsym {

namespace {

constexpr mpfr_prec_t kBits = 256;

// Owning mpfr_t at the working precision.
struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, kBits); }
  explicit Mp(double x, mpfr_rnd_t rnd = MPFR_RNDN) : Mp() { mpfr_set_d(v, x, rnd); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};

struct MpInterval {
  Mp lo, hi;
  MpInterval() {
    mpfr_set_ui(lo.v, 1, MPFR_RNDN);
    mpfr_set_ui(hi.v, 1, MPFR_RNDN);
  }
  // both endpoints and factors are positive
  void mul_rational(const BigRational& q) {
    Mp a, b;
    mpfr_set_q(a.v, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b.v, q.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(lo.v, lo.v, a.v, MPFR_RNDD);
    mpfr_mul(hi.v, hi.v, b.v, MPFR_RNDU);
  }
  void mul(const MpInterval& f) {
    mpfr_mul(lo.v, lo.v, f.lo.v, MPFR_RNDD);
    mpfr_mul(hi.v, hi.v, f.hi.v, MPFR_RNDU);
  }
  // multiply the lower end by (1 - t) where t is an upper bound on a defect
  void shrink_lower(const Mp& t) {
    Mp one_minus;
    mpfr_ui_sub(one_minus.v, 1, t.v, MPFR_RNDD);
    mpfr_mul(lo.v, lo.v, one_minus.v, MPFR_RNDD);
  }
};

std::string format(const Mp& x, char rounding) {
  char* buf = nullptr;
  std::string fmt = std::string("%.30R") + rounding + "e";
  mpfr_asprintf(&buf, fmt.c_str(), x.v);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

DecimalInterval to_decimal(const MpInterval& iv) {
  return {format(iv.lo, 'D'), format(iv.hi, 'U'), mpfr_get_d(iv.lo.v, MPFR_RNDD), mpfr_get_d(iv.hi.v, MPFR_RNDU)};
}

// prod_{i >= 1} (1 - p^{-(2i+1)}), truncated once the terms drop below
// 2^{-2 kBits}, with the omitted factors bounded below by 1 - sum of terms.
void mul_odd_zeta_factor(MpInterval& acc, Int p) {
  MpInterval f;
  Mp x_lo, x_hi, t;
  for (long e = 3;; e += 2) {
    mpfr_ui_pow_ui(x_hi.v, static_cast<unsigned long>(p), static_cast<unsigned long>(e), MPFR_RNDD);
    mpfr_ui_div(x_hi.v, 1, x_hi.v, MPFR_RNDU);
    mpfr_ui_pow_ui(x_lo.v, static_cast<unsigned long>(p), static_cast<unsigned long>(e), MPFR_RNDU);
    mpfr_ui_div(x_lo.v, 1, x_lo.v, MPFR_RNDD);
    mpfr_ui_sub(t.v, 1, x_hi.v, MPFR_RNDD);
    mpfr_mul(f.lo.v, f.lo.v, t.v, MPFR_RNDD);
    mpfr_ui_sub(t.v, 1, x_lo.v, MPFR_RNDU);
    mpfr_mul(f.hi.v, f.hi.v, t.v, MPFR_RNDU);
    if (mpfr_get_exp(x_hi.v) < -2 * static_cast<long>(kBits)) {
      // remaining terms sum to at most x / (1 - p^{-2}) <= 2x
      mpfr_mul_ui(t.v, x_hi.v, 2, MPFR_RNDU);
      f.shrink_lower(t);
      break;
    }
  }
  acc.mul(f);
}

// Upper bound on sum_{p > P} C p^{-e}, using pi(x) < 1.25506 x / ln x:
// sum_{p > P} p^{-e} <= e / (e - 1) * 1.25506 / ln P * P^{1-e}.
void prime_tail(Mp& out, double C, int e, Int P) {
  Mp lnP, t;
  mpfr_set_ui(lnP.v, static_cast<unsigned long>(P), MPFR_RNDD);
  mpfr_log(lnP.v, lnP.v, MPFR_RNDD);
  mpfr_ui_pow_ui(t.v, static_cast<unsigned long>(P), static_cast<unsigned long>(e - 1), MPFR_RNDD);
  mpfr_mul(t.v, t.v, lnP.v, MPFR_RNDD);
  mpfr_set_d(out.v, C * 1.25506 * e / (e - 1), MPFR_RNDU);
  mpfr_nextabove(out.v);
  mpfr_div(out.v, out.v, t.v, MPFR_RNDU);
}

void check_cutoff(Int cutoff) {
  if (cutoff < 2) throw InvalidArgument("prime cutoff must be >= 2");
}

enum class Kind { FirstDivisors, SquareFree };

EulerProductResult euler_product(Kind kind, int n, Int cutoff, bool assume_p2) {
  check_cutoff(cutoff);
  if (n != kInfiniteN && n < (kind == Kind::FirstDivisors ? 2 : 1))
    throw InvalidArgument(kind == Kind::FirstDivisors ? "need n >= 2" : "need n >= 1");
  MpInterval acc;
  for (Int p : primes_up_to(cutoff)) {
    if (p == 2 && !assume_p2) continue;
    if (n == kInfiniteN) {
      mul_odd_zeta_factor(acc, p);
      if (kind == Kind::SquareFree) acc.mul_rational(1 - BigRational(1, p * p));
    } else {
      acc.mul_rational(kind == Kind::FirstDivisors ? local_first_divisors_one(n, p) : local_squarefree_det(n, p));
    }
  }
  LocalDefect d;
  if (n == kInfiniteN)
    d = kind == Kind::FirstDivisors ? LocalDefect{4.0 / 3.0 + 1e-9, 3} : LocalDefect{2.5, 2};
  else
    d = kind == Kind::FirstDivisors ? first_divisors_defect(n) : squarefree_defect(n);
  Mp tail;
  prime_tail(tail, d.C, d.e, cutoff);
  acc.shrink_lower(tail);

  EulerProductResult r;
  r.n = n;
  r.prime_cutoff = cutoff;
  r.assume_p2 = assume_p2;
  r.value = to_decimal(acc);
  r.tail_bound = mpfr_get_d(tail.v, MPFR_RNDU);
  return r;
}

}  // namespace

double DecimalInterval::distance(double x) const {
  if (x < lower_d) return lower_d - x;
  if (x > upper_d) return x - upper_d;
  return 0;
}

std::vector<Int> primes_up_to(Int cutoff) {
  std::vector<bool> composite(static_cast<std::size_t>(cutoff) + 1, false);
  std::vector<Int> out;
  for (Int i = 2; i <= cutoff; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (Int j = i * i; j <= cutoff; j += i) composite[j] = true;
  }
  return out;
}

BigRational local_first_divisors_one(int n, Int p) {
  if (n < 2) throw InvalidArgument("need n >= 2");
  return pi_n(n, p) / beta_t(n, p) + pi_n(n, p) / (p * beta_t(n - 1, p) * pi_n(1, p));
}

BigRational local_squarefree_det(int n, Int p) {
  if (n < 1) throw InvalidArgument("need n >= 1");
  return pi_n(n, p) / beta_t(n, p) + pi_n(n, p) / (p * beta_t(n - 1, p) * beta_t(1, p));
}

// The first-divisors factor is a partial product of prod_{i>=1}(1 - p^{-(2i+1)}),
// whose defect is at most p^{-3}/(1 - p^{-2}) <= (4/3) p^{-3}. The square-free
// factor is at least (1 - p^{-2}) times that product minus p^{-n-1}.
LocalDefect first_divisors_defect(int) { return {4.0 / 3.0 + 1e-9, 3}; }

LocalDefect squarefree_defect(int n) {
  if (n == 1) return {1.0, 2};
  return {2.5, 2};
}

EulerProductResult density_first_divisors_one(int n, Int cutoff, bool assume_p2) {
  return euler_product(Kind::FirstDivisors, n, cutoff, assume_p2);
}

EulerProductResult density_squarefree_det(int n, Int cutoff, bool assume_p2) {
  return euler_product(Kind::SquareFree, n, cutoff, assume_p2);
}

DecimalInterval zeta_product(const std::vector<int>& exponents, Int cutoff) {
  check_cutoff(cutoff);
  for (int e : exponents)
    if (e < 2) throw InvalidArgument("zeta exponents must be >= 2");
  MpInterval acc;
  const auto primes = primes_up_to(cutoff);
  for (int e : exponents) {
    for (Int p : primes) acc.mul_rational(1 - rpow(p, -e));
    Mp tail;
    mpfr_ui_pow_ui(tail.v, static_cast<unsigned long>(cutoff), static_cast<unsigned long>(e - 1), MPFR_RNDD);
    mpfr_mul_ui(tail.v, tail.v, static_cast<unsigned long>(e - 1), MPFR_RNDD);
    mpfr_ui_div(tail.v, 1, tail.v, MPFR_RNDU);
    acc.shrink_lower(tail);
  }
  return to_decimal(acc);
}

}  // namespace padicsym
