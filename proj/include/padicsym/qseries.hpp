#pragma once

// Finite q-products shared by the densities, templated on the scalar.

namespace padicsym {

/// prod_{j=1..m} (1 - t^j); pi_m at t = 1/p.
template <typename Scalar>
Scalar phi(int m, const Scalar& t) {
  Scalar out(1), tj(1);
  for (int j = 1; j <= m; ++j) {
    tj *= t;
    out *= Scalar(1) - tj;
  }
  return out;
}

/// prod_{j=1..floor(m/2)} (1 - t^{2j}).
template <typename Scalar>
Scalar phi_even(int m, const Scalar& t) {
  Scalar out(1), t2 = t * t, tj(1);
  for (int j = 1; j <= m / 2; ++j) {
    tj *= t2;
    out *= Scalar(1) - tj;
  }
  return out;
}

template <typename Scalar>
Scalar power(const Scalar& x, long e) {
  Scalar base = e < 0 ? Scalar(Scalar(1) / x) : x, out(1);
  for (unsigned long k = e < 0 ? -e : e; k; k >>= 1) {
    if (k & 1) out *= base;
    base *= base;
  }
  return out;
}

}  // namespace padicsym
