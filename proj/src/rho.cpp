#include "padicsym/densities.hpp"
#include "padicsym/qseries.hpp"

namespace padicsym {

namespace {

bool unit_class(SquareClass a) { return !a.odd_valuation(); }

SquareClass p_power(int l) { return l % 2 ? SquareClass::p() : SquareClass::one(); }

// x^e for x = +-1 with e possibly negative
int sign_pow(int x, long e) { return (e % 2 != 0) ? x : 1; }

// the factor (eps/p) of the closed forms, as a rational
BigRational eps_over_p(Int p) { return BigRational(epsilon(p), p); }

}  // namespace

BigRational sigma_n(SquareClass a, int n, Int p) {
  (void)OddPrime{p};
  if (n < 0) throw InvalidArgument("sigma_n needs n >= 0");
  if (n == 0) return a == SquareClass::one() ? 1 : 0;
  const BigRational ip(1, p);
  if (n % 2 == 1) return unit_class(a) ? BigRational(1 / (2 * (1 + ip))) : BigRational(1 / (2 * p * (1 + ip)));
  const BigRational denom = 2 * (1 + ip) * (1 - rpow(p, -(n + 1)));
  if (!unit_class(a)) return (1 - rpow(p, -n)) / (p * denom);
  const int s = a.unit_char();
  const BigRational e = power(eps_over_p(p), n / 2);
  return (1 + s * e) * (1 - s * e / (p * p)) / denom;
}

BigRational delta_n(SquareClass a, int n, Int p) {
  (void)OddPrime{p};
  if (n < 0) throw InvalidArgument("delta_n needs n >= 0");
  if (n == 0) return a == SquareClass::one() ? 1 : 0;
  if (unit_class(a)) return pi_n(n, p) / (beta_t(n + 1, p) * alpha_ns(n, a.unit_char(), p));
  if (n % 2 == 0) return 0;
  return epsilon(p) * power(eps_over_p(p), (n + 1) / 2) * pi_n(n, p) / (2 * beta_t(n + 1, p) * beta_t(n - 1, p));
}

BigRational rho_n(SquareClass a, int b, int n, Int p) {
  if (b != 1 && b != -1) throw InvalidArgument("Hasse invariant must be +1 or -1");
  return (sigma_n(a, n, p) + b * delta_n(a, n, p)) / 2;
}

BigRational rho_recurrence_residual(int n, Int p) {
  if (n < 1) throw InvalidArgument("recurrence residual needs n >= 1");
  const int eps = epsilon(p);
  const SquareClass r = SquareClass::r(), P = SquareClass::p();
  BigRational worst = 0;
  for (SquareClass a : kAllSquareClasses)
    for (int b : {1, -1}) {
      auto twist = [&](long l) { return b * sign_pow(eps, l * (l - 1) / 2); };
      BigRational rhs = rpow(p, -static_cast<long>(n) * (n + 1) / 2) *
                        rho_n(a * p_power(n), twist(n) * sign_pow(hilbert(P, a, p), n - 1), n, p);
      for (int l = 0; l < n; ++l) {
        BigRational w = rpow(p, -static_cast<long>(l) * (l + 1) / 2) * pi_n(n, p) / pi_n(l, p);
        rhs += w / alpha_ns(n - l, 1, p) * rho_n(a * p_power(l), twist(l) * sign_pow(hilbert(P, a, p), l - 1), l, p);
        int b2 = twist(l) * sign_pow(hilbert(a, r, p), l) * sign_pow(hilbert(P, a * r, p), l - 1);
        rhs += w / alpha_ns(n - l, -1, p) * rho_n(a * r * p_power(l), b2, l, p);
      }
      BigRational diff = abs(rho_n(a, b, n, p) - rhs);
      if (diff > worst) worst = diff;
    }
  return worst;
}

BigRational isotropy_prob(int n, Int p) {
  (void)OddPrime{p};
  if (n < 1) throw InvalidArgument("isotropy_prob needs n >= 1");
  const BigRational ip(1, p);
  switch (n) {
    case 1:
      return 0;
    case 2:
      return BigRational(1, 2);
    case 3:
      return 1 - 1 / (2 * p * (1 + ip) * (1 + ip));
    case 4:
      return 1 - (1 - ip) / (4 * rpow(p, 3) * (1 + ip) * (1 + ip) * (1 - rpow(p, -5)));
    default:
      return 1;
  }
}

BigRational isotropy_prob_rho(int n, Int p) {
  BigRational total = 0;
  for (SquareClass a : kAllSquareClasses)
    for (int b : {1, -1})
      if (isotropic_by_invariants({n, a, b}, p)) total += rho_n(a, b, n, p);
  return total;
}

XiCoeffs xi_coeffs(int n, Int p) {
  (void)OddPrime{p};
  if (n < 2) throw InvalidArgument("xi coefficients need n >= 2");
  const BigRational ip(1, p);
  XiCoeffs xi;
  xi.xi1 = rpow(p, -static_cast<long>(n - 2) * (n - 1) / 2) * (1 - rpow(p, -(n - 1))) * (1 - rpow(p, -n)) /
           (2 * (1 + ip));
  xi.xi2 = rpow(p, -static_cast<long>(n - 1) * n / 2) * (1 - rpow(p, -n));
  xi.xi0 = 1 - rpow(p, -static_cast<long>(n) * (n + 1) / 2) - xi.xi1 - xi.xi2;
  return xi;
}

Interval rho_limit(SquareClass a, int b, Int p) {
  (void)OddPrime{p};
  const BigRational ip(1, p);
  if (!unit_class(a)) return Interval::point(1 / (4 * p * (1 + ip)));
  Interval beta = beta_infinity(p);
  Interval term = pi_infinity(p) / (beta * beta) * Interval::point(BigRational(b, 4));
  return Interval::point(1 / (4 * (1 + ip))) + term;
}

}  // namespace padicsym
