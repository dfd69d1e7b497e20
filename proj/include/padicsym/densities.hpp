#pragma once

// Closed-form densities for random symmetric and general matrices over Z_p,
// all as exact rationals in p.

#include <functional>
#include <vector>

#include "padicsym/canonical.hpp"
#include "padicsym/rational.hpp"

namespace padicsym {

/// Weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  /// Accepts any order and drops zeros.
  explicit Partition(std::vector<int> parts);
  static Partition from_eldivs(const EldivSequence& e);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  /// m_j(lambda) for j >= 1.
  std::map<int, int> multiplicities() const;
  /// sum_i i * lambda_i
  long weighted_size() const;
  /// Exponent sequence of length n with n - length() leading zeros.
  EldivSequence as_eldivs(int n) const;

  std::string label() const;
  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of k with at most max_len parts, each at most max_part.
std::vector<Partition> partitions_of(int k, int max_len = INT_MAX, int max_part = INT_MAX);

BigRational pi_n(int n, Int p);
BigRational beta_t(int t, Int p);
/// |O_n^s(F_p)| / p^{n(n-1)/2}; s = +1 or -1.
BigRational alpha_ns(int n, int s, Int p);
BigInt orth_order(int n, int s, Int p);

BigRational sym_class_prob(const SymClass& cls, Int p);
BigRational sym_eldiv_prob(const EldivSequence& e, Int p);
BigRational gen_eldiv_prob(const EldivSequence& e, Int p);
/// n x m matrices with n >= m; e has m exponents.
BigRational rect_eldiv_prob(const EldivSequence& e, int n, Int p);

BigRational stabilizer_measure(const EldivSequence& e, Int p);
/// Both formulas for D; throws if they disagree.
long D_sigma(const EldivSequence& e);

/// Symmetrization over S_n at the points x (lambda padded with zeros).
BigRational hall_littlewood_P(const Partition& lambda, const BigRational& t, const std::vector<BigRational>& x);
BigRational hall_littlewood_Q(const Partition& lambda, const BigRational& t, const std::vector<BigRational>& x);
/// x_i = p^{-i}, i = 1..n
std::vector<BigRational> principal_specialization(int n, Int p);

/// Probability that an n x m matrix over F_q has corank r (rank n - r).
BigRational rank_dist_general(int n, int m, int r, Int q);
/// Probability that a symmetric n x n matrix over F_p has corank r.
BigRational rank_dist_symmetric(int n, int r, Int p);

/// P(d(Q) = a)
BigRational sigma_n(SquareClass a, int n, Int p);
/// rho_n(a, 1) - rho_n(a, -1)
BigRational delta_n(SquareClass a, int n, Int p);
/// P(d(Q) = a, c(Q) = b)
BigRational rho_n(SquareClass a, int b, int n, Int p);
BigRational rho_recurrence_residual(int n, Int p);

BigRational isotropy_prob(int n, Int p);
/// Sum of rho_n over the (disc, hasse) pairs that the invariant rules call isotropic.
BigRational isotropy_prob_rho(int n, Int p);

struct XiCoeffs {
  BigRational xi0, xi1, xi2;
};
XiCoeffs xi_coeffs(int n, Int p);

/// Products over all i >= 1, with truncation after N factors bounded.
Interval pi_infinity(Int p, int N = 80);
Interval beta_infinity(Int p, int N = 80);
Interval rho_limit(SquareClass a, int b, Int p);

BigRational finite_partition_prob(const Partition& lambda, int n, Int p);
Interval limit_partition_prob(const Partition& lambda, Int p);

/// sum over |lambda| <= max_size of f(lambda), and an upper bound on the
/// mass of the remaining partitions.
struct PartitionMass {
  Interval partial;
  BigRational tail;
};
PartitionMass partition_mass(Int p, int max_size);

/// P(|det| = p^{-k}) for n x n symmetric matrices.
Interval det_dist(int n, int k, Int p, int cap);

using ClassPredicate = std::function<bool(const SymClass&)>;
/// Enumerates all classes with every k_i <= cap.
Interval event_prob_capped(const ClassPredicate& pred, int n, Int p, int cap);

/// Every exponent sequence of length n with entries in [0, cap].
std::vector<EldivSequence> eldivs_up_to(int n, int cap);

}  // namespace padicsym
