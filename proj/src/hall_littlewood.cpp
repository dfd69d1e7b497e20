#include <algorithm>
#include <numeric>

#include "padicsym/densities.hpp"
#include "padicsym/qseries.hpp"

namespace padicsym {

namespace {

// v_m(t) = prod_{j=1..m} (1 + t + ... + t^{j-1})
BigRational v_m(int m, const BigRational& t) {
  BigRational out = 1, geom = 0, tj = 1;
  for (int j = 1; j <= m; ++j) {
    geom += tj;
    tj *= t;
    out *= geom;
  }
  return out;
}

}  // namespace

BigRational hall_littlewood_P(const Partition& lambda, const BigRational& t, const std::vector<BigRational>& x) {
  const int n = static_cast<int>(x.size());
  if (n > 8) throw InvalidArgument("Hall-Littlewood symmetrization is limited to n <= 8");
  if (lambda.length() > n) throw LengthExceedsN("partition length exceeds number of variables");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (x[i] == x[j]) throw RepeatedSpecializationPoint("specialization points must be distinct");

  std::vector<int> lam = lambda.parts();
  lam.resize(n, 0);
  std::map<int, int> mult;
  for (int part : lam) ++mult[part];
  BigRational v = 1;
  for (auto [part, m] : mult) v *= v_m(m, t);

  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  BigRational sum = 0;
  do {
    BigRational term = 1;
    for (int i = 0; i < n; ++i) term *= power(x[w[i]], lam[i]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) term *= (x[w[i]] - t * x[w[j]]) / (x[w[i]] - x[w[j]]);
    sum += term;
  } while (std::next_permutation(w.begin(), w.end()));
  return sum / v;
}

BigRational hall_littlewood_Q(const Partition& lambda, const BigRational& t, const std::vector<BigRational>& x) {
  BigRational b = 1;
  for (auto [part, m] : lambda.multiplicities()) b *= phi<BigRational>(m, t);
  return b * hall_littlewood_P(lambda, t, x);
}

std::vector<BigRational> principal_specialization(int n, Int p) {
  std::vector<BigRational> x;
  for (int i = 1; i <= n; ++i) x.push_back(rpow(p, -i));
  return x;
}

}  // namespace padicsym
