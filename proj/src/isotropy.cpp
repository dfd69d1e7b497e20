#include <algorithm>

#include "padicsym/canonical.hpp"

namespace padicsym {

namespace {

// Nonzero z over F_p with sum u_i z_i^2 == 0, i.e. a smooth zero of a unit
// diagonal form. Small spaces are scanned lexicographically (last coordinate
// fastest); large ones fall back to solving for one coordinate.
std::optional<std::vector<Int>> smooth_zero_mod_p(const std::vector<Int>& u, Int p) {
  const std::size_t m = u.size();
  if (m < 2) return std::nullopt;
  Ring f(p, 1);
  double space = 1;
  for (std::size_t i = 0; i < m; ++i) space *= static_cast<double>(p);
  if (space <= 1e6) {
    std::vector<Int> z(m, 0);
    for (;;) {
      std::size_t i = m;
      while (i > 0) {
        --i;
        if (++z[i] < p) break;
        z[i] = 0;
        if (i == 0) return std::nullopt;
      }
      Int q = 0;
      for (std::size_t j = 0; j < m; ++j) q = f.add(q, f.mul(u[j], f.mul(z[j], z[j])));
      if (q == 0) return z;
    }
  }
  // z_0 = 1, scan z_1, solve the last coordinate
  std::vector<Int> z(m, 0);
  z[0] = 1;
  for (Int t = 0; t < p; ++t) {
    if (m >= 3) z[1] = t;
    Int q = 0;
    for (std::size_t j = 0; j + 1 < m; ++j) q = f.add(q, f.mul(u[j], f.mul(z[j], z[j])));
    Int need = f.mul(f.neg(q), inv_mod(f, u[m - 1]));
    if (need == 0) {
      z[m - 1] = 0;
      return z;
    }
    if (chi(p, need) == QuadChar::Plus) {
      Ring big(p, 1);
      for (Int s = 1; s < p; ++s)
        if (big.mul(s, s) == need) {
          z[m - 1] = s;
          return z;
        }
    }
    if (m == 2) break;
  }
  return std::nullopt;
}

}  // namespace

IsotropySearch isotropy_search(const Ring& ring, const ResidueMatrix& X, int max_depth) {
  const int n = static_cast<int>(X.rows());
  if (n > 4) throw InvalidArgument("isotropy_search supports n <= 4");
  if (max_depth < 0) max_depth = 2 * ring.K();
  Diagonalization d = diagonalize(ring, X);

  // Current form: p^{-shift} Q(p^{e_1} z_1, ...), known modulo p^{K - shift}.
  std::vector<int> e(n, 0);
  int shift = 0;
  IsotropySearch out;
  for (;;) {
    const int prec = ring.K() - shift;
    std::vector<int> cur(n);
    for (int i = 0; i < n; ++i) cur[i] = d.k[i] >= ring.K() ? prec : d.k[i] + 2 * e[i] - shift;
    int m = *std::min_element(cur.begin(), cur.end());
    if (m >= prec) return out;
    shift += m;
    std::vector<int> A;
    std::vector<Int> units;
    for (int i = 0; i < n; ++i)
      if (cur[i] == m) {
        A.push_back(i);
        units.push_back(d.u[i]);
      }
    if (auto z = smooth_zero_mod_p(units, ring.p())) {
      // Hensel: re-solve one nonzero coordinate so the block vanishes mod p^K
      const std::size_t j = static_cast<std::size_t>(
          std::find_if(z->begin(), z->end(), [](Int v) { return v != 0; }) - z->begin());
      Int rest = 0;
      for (std::size_t t = 0; t < A.size(); ++t)
        if (t != j) rest = ring.add(rest, ring.mul(units[t], ring.mul((*z)[t], (*z)[t])));
      (*z)[j] = sqrt_unit(ring, ring.mul(ring.neg(rest), inv_mod(ring, units[j])));
      int emin = ring.K();
      for (std::size_t t = 0; t < A.size(); ++t)
        if ((*z)[t] != 0) emin = std::min(emin, e[A[t]]);
      ResidueVector y = ResidueVector::Zero(n);
      for (std::size_t t = 0; t < A.size(); ++t)
        if ((*z)[t] != 0) y(A[t]) = ring.mul(ring.power(std::min(e[A[t]] - emin, ring.K())), (*z)[t]);
      // Q(x) = y^T (P X P^T) y with x = P^T y
      out.witness = mul(ring, d.P.transpose(), y);
      out.certified = true;
      return out;
    }
    if (out.depth >= max_depth) return out;
    ++out.depth;
    for (int i : A) ++e[i];
    ++shift;
  }
}

}  // namespace padicsym
