#include "padicsym/densities.hpp"

#include <algorithm>
#include <sstream>

#include "padicsym/qseries.hpp"

namespace padicsym {

BigInt ipow(Int base, unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

BigRational rpow(Int base, long e) {
  BigInt b = ipow(base, static_cast<unsigned long>(e < 0 ? -e : e));
  BigRational out = e < 0 ? BigRational(BigInt(1), b) : BigRational(b);
  out.canonicalize();
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  BigRational c[4] = {a.lower * b.lower, a.lower * b.upper, a.upper * b.lower, a.upper * b.upper};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lower <= 0 && b.upper >= 0) throw InvalidArgument("interval division by an interval containing 0");
  return a * Interval{1 / b.upper, 1 / b.lower};
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lower + b.lower, a.upper + b.upper}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lower - b.upper, a.upper - b.lower}; }

BigRational distance(const Interval& iv, const BigRational& x) {
  if (x < iv.lower) return iv.lower - x;
  if (x > iv.upper) return x - iv.upper;
  return 0;
}

Partition::Partition(std::vector<int> parts) {
  for (int x : parts) {
    if (x < 0) throw InvalidArgument("partition parts must be non-negative");
    if (x > 0) parts_.push_back(x);
  }
  std::sort(parts_.rbegin(), parts_.rend());
}

Partition Partition::from_eldivs(const EldivSequence& e) {
  if (!e.finite()) throw SingularClass("partition of an infinite exponent sequence");
  return Partition(e.exponents());
}

int Partition::size() const {
  int s = 0;
  for (int x : parts_) s += x;
  return s;
}

std::map<int, int> Partition::multiplicities() const {
  std::map<int, int> m;
  for (int x : parts_) ++m[x];
  return m;
}

long Partition::weighted_size() const {
  long s = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += static_cast<long>(i + 1) * parts_[i];
  return s;
}

EldivSequence Partition::as_eldivs(int n) const {
  if (length() > n) throw LengthExceedsN("partition has more parts than n=" + std::to_string(n));
  std::vector<int> k(n - length(), 0);
  k.insert(k.end(), parts_.rbegin(), parts_.rend());
  return EldivSequence(k);
}

std::string Partition::label() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

namespace {

BigRational inv_p(Int p) { return BigRational(1, p); }

void check_prime(Int p) { (void)OddPrime{p}; }

// prod_j p^{-k_j (n - j + 1)}, j = 1..n over ascending exponents
long class_weight(const EldivSequence& e) {
  const int n = e.size();
  long w = 0;
  for (int j = 1; j <= n; ++j) w += static_cast<long>(e[j - 1]) * (n - j + 1);
  return w;
}

}  // namespace

BigRational pi_n(int n, Int p) {
  if (n < 0) throw InvalidArgument("pi_n needs n >= 0");
  if (p < 2) throw InvalidArgument("pi_n needs p >= 2");
  return phi<BigRational>(n, inv_p(p));
}

BigRational beta_t(int t, Int p) {
  if (t < 0) throw InvalidArgument("beta_t needs t >= 0");
  if (p < 2) throw InvalidArgument("beta_t needs p >= 2");
  return phi_even<BigRational>(t, inv_p(p));
}

BigRational alpha_ns(int n, int s, Int p) {
  check_prime(p);
  if (n < 0) throw InvalidArgument("alpha needs n >= 0");
  if (s != 1 && s != -1) throw InvalidArgument("signature must be +1 or -1");
  if (n == 0) {
    if (s < 0) throw UndefinedSignature("alpha_0^- is undefined");
    return 1;
  }
  BigRational a = 2 * beta_t(n, p);
  if (n % 2 == 0) {
    const int t = n / 2;
    const int eps_t = (t % 2 == 0) ? 1 : epsilon(p);
    a /= 1 + s * eps_t * rpow(p, -t);
  }
  return a;
}

BigInt orth_order(int n, int s, Int p) {
  BigRational v = alpha_ns(n, s, p) * rpow(p, static_cast<long>(n) * (n - 1) / 2);
  if (v.get_den() != 1) throw Error("orthogonal group order is not an integer");
  return v.get_num();
}

BigRational sym_class_prob(const SymClass& cls, Int p) {
  check_prime(p);
  if (!cls.eldivs.finite()) throw SingularClass("class probability needs finite exponents");
  BigRational out = pi_n(cls.n(), p);
  for (auto [k, m] : cls.eldivs.multiplicities()) out /= alpha_ns(m, cls.sign(k), p);
  return out * rpow(p, -class_weight(cls.eldivs));
}

BigRational sym_eldiv_prob(const EldivSequence& e, Int p) {
  check_prime(p);
  if (!e.finite()) throw SingularClass("eldiv probability needs finite exponents");
  BigRational out = pi_n(e.size(), p);
  for (auto [k, m] : e.multiplicities()) out /= beta_t(m, p);
  return out * rpow(p, -class_weight(e));
}

BigRational gen_eldiv_prob(const EldivSequence& e, Int p) {
  if (!e.finite()) throw SingularClass("eldiv probability needs finite exponents");
  const int n = e.size();
  BigRational out = pi_n(n, p) * pi_n(n, p);
  for (auto [k, m] : e.multiplicities()) out /= pi_n(m, p);
  return out * rpow(p, D_sigma(e) - static_cast<long>(n) * e.weight());
}

BigRational rect_eldiv_prob(const EldivSequence& e, int n, Int p) {
  if (!e.finite()) throw SingularClass("eldiv probability needs finite exponents");
  const int m = e.size();
  if (n < m) throw InvalidArgument("rectangular density needs n >= m");
  BigRational out = pi_n(n, p) * pi_n(m, p) / pi_n(n - m, p);
  for (auto [k, mult] : e.multiplicities()) out /= pi_n(mult, p);
  return out * rpow(p, D_sigma(e) - static_cast<long>(n) * e.weight());
}

long D_sigma(const EldivSequence& e) {
  long a = e.D(), b = e.D_from_multiplicities();
  if (a != b) throw Error("D(Sigma) formulas disagree");
  return a;
}

BigRational stabilizer_measure(const EldivSequence& e, Int p) {
  BigRational out = rpow(p, -D_sigma(e));
  for (auto [k, m] : e.multiplicities()) out *= pi_n(m, p);
  return out;
}

BigRational rank_dist_general(int n, int m, int r, Int q) {
  if (q < 2) throw InvalidArgument("q must be >= 2");
  if (!(0 <= r && r <= n && n <= m)) throw InvalidArgument("need 0 <= r <= n <= m");
  BigRational out = rpow(q, -static_cast<long>(r) * (m - n + r)) * pi_n(n, q) * pi_n(m, q);
  return out / (pi_n(r, q) * pi_n(m - n + r, q) * pi_n(n - r, q));
}

BigRational rank_dist_symmetric(int n, int r, Int p) {
  if (!(0 <= r && r <= n)) throw InvalidArgument("need 0 <= r <= n");
  return rpow(p, -static_cast<long>(r) * (r + 1) / 2) * pi_n(n, p) / (pi_n(r, p) * beta_t(n - r, p));
}

Interval pi_infinity(Int p, int N) {
  BigRational u = pi_n(N, p);
  return {u * (1 - rpow(p, -N) / (p - 1)), u};
}

Interval beta_infinity(Int p, int N) {
  BigRational b = beta_t(2 * N, p);
  return {b * (1 - rpow(p, -2L * N) / (p * p - 1)), b};
}

namespace {

BigRational d_lambda(const Partition& lambda, Int p) {
  BigRational d = 1;
  for (auto [part, m] : lambda.multiplicities()) d *= beta_t(m, p);
  return d;
}

}  // namespace

BigRational finite_partition_prob(const Partition& lambda, int n, Int p) {
  check_prime(p);
  if (lambda.length() > n) throw LengthExceedsN("partition length exceeds n");
  return pi_n(n, p) / (beta_t(n - lambda.length(), p) * d_lambda(lambda, p)) * rpow(p, -lambda.weighted_size());
}

Interval limit_partition_prob(const Partition& lambda, Int p) {
  check_prime(p);
  BigRational h = rpow(p, -lambda.weighted_size()) / d_lambda(lambda, p);
  return pi_infinity(p) / beta_infinity(p) * Interval::point(h);
}

PartitionMass partition_mass(Int p, int max_size) {
  check_prime(p);
  const BigRational x = inv_p(p), lift = BigRational(p, p - 1);
  BigRational h_sum = 0, g_partial = 0;
  for (int k = 0; k <= max_size; ++k)
    for (const auto& lambda : partitions_of(k)) {
      BigRational w = rpow(p, -lambda.weighted_size());
      h_sum += w / d_lambda(lambda, p);
      g_partial += w * power(lift, lambda.length());
    }

  // sum over all lambda of G(lambda) = p^{-sum i lambda_i} (1 - 1/p)^{-length}:
  // with d_j = lambda_j - lambda_{j+1}, the weight is sum_j d_j j(j+1)/2.
  const int L = 40;
  BigRational g_total = 1, prefix = 1;
  for (int l = 1; l <= L; ++l) {
    BigRational xl = power(x, static_cast<long>(l) * (l + 1) / 2);
    g_total += power(lift, l) * prefix * xl / (1 - xl);
    prefix /= 1 - xl;
  }
  // prefix factors stay below C = 1/(1 - x/(1-x)); consecutive terms shrink by
  // at least a half, so the remainder is at most twice the first omitted bound
  BigRational C = 1 / (1 - x / (1 - x));
  g_total += 2 * C / (1 - x) * power(lift, L + 1) * power(x, static_cast<long>(L + 1) * (L + 2) / 2);

  Interval ratio = pi_infinity(p) / beta_infinity(p);
  return {ratio * Interval::point(h_sum), ratio.upper * (g_total - g_partial)};
}

}  // namespace padicsym
