#include <gtest/gtest.h>

#include <map>

#include "padicsym/densities.hpp"
#include "padicsym/qseries.hpp"

using namespace padicsym;

namespace {

BigRational frac(long a, long b) {
  BigRational q(a, b);
  q.canonicalize();
  return q;
}

int val(Int x, Int p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  for (; x % p == 0 && v < cap; x /= p) ++v;
  return v;
}

// Elementary divisors of every n x m matrix mod p^2 (n >= m), labelled by
// (k_1, k_1 + k_2, ...) from gcds of minors; only classes with total
// exponent <= 1 are determined mod p^2.
std::map<std::string, long> tally_rect_mod_p2(int n, int m, Int p) {
  const Int q = p * p;
  const int entries = n * m;
  long total = 1;
  for (int i = 0; i < entries; ++i) total *= q;
  std::map<std::string, long> out;
  std::vector<Int> a(entries);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int i = 0; i < entries; ++i, rest /= q) a[i] = rest % q;
    auto at = [&](int i, int j) { return a[i * m + j]; };
    int v1 = 2;
    for (Int x : a) v1 = std::min(v1, val(x % q, p, 2));
    std::string label;
    if (m == 1) {
      label = v1 <= 1 ? std::to_string(v1) : "unresolved";
    } else {
      int v2 = 2;
      for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2) {
          const Int d = ((at(r1, 0) * at(r2, 1) - at(r1, 1) * at(r2, 0)) % q + q) % q;
          v2 = std::min(v2, val(d, p, 2));
        }
      label = v2 <= 1 ? std::to_string(v1) + "," + std::to_string(v2 - v1) : "unresolved";
    }
    ++out[label];
  }
  return out;
}

}  // namespace

TEST(GroupDensities, SmallValues) {
  EXPECT_EQ(pi_n(0, 3), 1);
  EXPECT_EQ(pi_n(2, 3), frac(48, 81));  // |GL_2(F_3)| / 3^4
  EXPECT_EQ(orth_order(2, 1, 3), 8);
  EXPECT_EQ(orth_order(2, -1, 3), 4);
  EXPECT_EQ(orth_order(3, 1, 5), orth_order(3, -1, 5));
  EXPECT_EQ(orth_order(1, -1, 7), 2);
  EXPECT_THROW(alpha_ns(0, -1, 3), UndefinedSignature);
  // beta_t sums alpha over the two signatures
  for (int t = 1; t <= 5; ++t) EXPECT_EQ(1 / beta_t(t, 5), 1 / alpha_ns(t, 1, 5) + 1 / alpha_ns(t, -1, 5));
}

TEST(ClassDensities, SignSumGivesEldivDensity) {
  for (Int p : {3, 5})
    for (const auto& e : eldivs_up_to(3, 3)) {
      BigRational sum = 0;
      for (const auto& cls : classes_over(e)) sum += sym_class_prob(cls, p);
      EXPECT_EQ(sum, sym_eldiv_prob(e, p)) << e.label();
    }
}

TEST(ClassDensities, SpecExamples) {
  EXPECT_EQ(sym_class_prob(SymClass::parse("0,0|+"), 3), frac(2, 9));
  EXPECT_EQ(sym_class_prob(SymClass::parse("0|+"), 3), frac(1, 3));
  EXPECT_EQ(sym_class_prob(SymClass::parse("1|-"), 3), frac(1, 9));
  EXPECT_THROW(sym_class_prob(SymClass(EldivSequence({0, EldivSequence::kInfinity}), std::vector<int>{1}), 3),
               SingularClass);
}

TEST(ClassDensities, MassApproachesOne) {
  for (Int p : {3, 5}) {
    BigRational prev = 0;
    for (int cap = 0; cap <= 4; ++cap) {
      BigRational seen = 0;
      for (const auto& e : eldivs_up_to(2, cap)) seen += sym_eldiv_prob(e, p);
      EXPECT_LT(seen, 1);
      EXPECT_GT(seen, prev);
      prev = seen;
    }
    EXPECT_LT(1 - prev, 3 * rpow(p, -2));
  }
}

TEST(GeneralDensities, BruteForceSquareMod9) {
  const auto t = tally_rect_mod_p2(2, 2, 3);
  const long total = 6561;
  EXPECT_EQ(frac(t.at("0,0"), total), gen_eldiv_prob(EldivSequence({0, 0}), 3));
  EXPECT_EQ(frac(t.at("0,1"), total), gen_eldiv_prob(EldivSequence({0, 1}), 3));
}

TEST(GeneralDensities, BruteForceRectangular3x2Mod9) {
  const auto t = tally_rect_mod_p2(3, 2, 3);
  const long total = 531441;
  EXPECT_EQ(frac(t.at("0,0"), total), rect_eldiv_prob(EldivSequence({0, 0}), 3, 3));
  EXPECT_EQ(frac(t.at("0,1"), total), rect_eldiv_prob(EldivSequence({0, 1}), 3, 3));
  const auto col = tally_rect_mod_p2(3, 1, 3);
  EXPECT_EQ(frac(col.at("0"), 729), rect_eldiv_prob(EldivSequence({0}), 3, 3));
  EXPECT_EQ(frac(col.at("1"), 729), rect_eldiv_prob(EldivSequence({1}), 3, 3));
  EXPECT_THROW(rect_eldiv_prob(EldivSequence({0, 0, 0}), 2, 3), InvalidArgument);
}

TEST(GeneralDensities, SumToOne) {
  for (Int p : {3, 5}) {
    BigRational seen = 0;
    for (const auto& e : eldivs_up_to(2, 10)) seen += gen_eldiv_prob(e, p);
    EXPECT_LT(1 - seen, rpow(p, -9));
  }
}

TEST(DSigma, BothFormulasAgree) {
  for (const auto& e : eldivs_up_to(4, 3)) EXPECT_EQ(D_sigma(e), e.D());
}

TEST(HallLittlewood, KnownSpecializations) {
  const std::vector<BigRational> x = {frac(1, 2), frac(1, 3), frac(1, 5)};
  const Partition one({1}), two({2}), eleven({1, 1});
  // t = 0: Schur polynomials
  EXPECT_EQ(hall_littlewood_P(one, 0, x), x[0] + x[1] + x[2]);
  const BigRational e2 = x[0] * x[1] + x[0] * x[2] + x[1] * x[2];
  const BigRational h2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + e2;
  EXPECT_EQ(hall_littlewood_P(two, 0, x), h2);
  EXPECT_EQ(hall_littlewood_P(eleven, 0, x), e2);
  // t = 1: monomial symmetric functions
  EXPECT_EQ(hall_littlewood_P(two, 1, x), x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  EXPECT_EQ(hall_littlewood_P(eleven, 1, x), e2);
  // P_(1^n) = e_n for every t
  EXPECT_EQ(hall_littlewood_P(Partition({1, 1, 1}), frac(2, 7), x), x[0] * x[1] * x[2]);
  EXPECT_EQ(hall_littlewood_P(Partition(), frac(2, 7), x), 1);
  // Q = b P with b = prod_i phi_{m_i}(t)
  const BigRational t = frac(1, 3);
  EXPECT_EQ(hall_littlewood_Q(Partition({2, 1, 1}), t, x), (1 - t) * (1 - t) * (1 - t * t) * hall_littlewood_P(Partition({2, 1, 1}), t, x));
  EXPECT_THROW(hall_littlewood_P(one, t, {frac(1, 2), frac(1, 2)}), RepeatedSpecializationPoint);
  EXPECT_THROW(hall_littlewood_P(Partition({1, 1, 1}), t, {frac(1, 2), frac(1, 3)}), LengthExceedsN);
}

TEST(RankDistributions, SymmetricTwoByTwo) {
  EXPECT_EQ(rank_dist_symmetric(2, 0, 3), frac(18, 27));
  EXPECT_EQ(rank_dist_symmetric(2, 1, 3), frac(8, 27));
  EXPECT_EQ(rank_dist_symmetric(2, 2, 3), frac(1, 27));
  EXPECT_EQ(rank_dist_general(1, 1, 1, 2), frac(1, 2));
  EXPECT_EQ(rank_dist_general(2, 2, 0, 2), frac(6, 16));
}

TEST(Rho, MarginalsAndRecurrence) {
  for (Int p : {3, 5, 7, 11}) {
    for (int n = 1; n <= 6; ++n) {
      BigRational total = 0;
      for (SquareClass a : kAllSquareClasses) {
        EXPECT_EQ(rho_n(a, 1, n, p) + rho_n(a, -1, n, p), sigma_n(a, n, p));
        EXPECT_EQ(rho_n(a, 1, n, p) - rho_n(a, -1, n, p), delta_n(a, n, p));
        total += sigma_n(a, n, p);
      }
      EXPECT_EQ(total, 1);
    }
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(rho_recurrence_residual(n, p), 0);
  }
  // n = 1: d = class of the single entry; unit with probability 1 - 1/p
  EXPECT_EQ(sigma_n(SquareClass::one(), 1, 3), frac(2, 3) / 2 / (1 - frac(1, 9)));
}

TEST(Isotropy, ClosedForms) {
  for (Int p : {3, 5, 7, 11, 13}) {
    const BigRational ip = frac(1, p), u = 1 + ip;
    EXPECT_EQ(isotropy_prob(1, p), 0);
    EXPECT_EQ(isotropy_prob(2, p), frac(1, 2));
    EXPECT_EQ(isotropy_prob(3, p), 1 - 1 / (2 * p * u * u));
    EXPECT_EQ(isotropy_prob(4, p), 1 - (1 - ip) / (4 * p * p * p * u * u * (1 - power(ip, 5))));
    EXPECT_EQ(isotropy_prob(5, p), 1);
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(isotropy_prob(n, p), isotropy_prob_rho(n, p));
  }
  EXPECT_EQ(isotropy_prob(3, 3), frac(29, 32));
  EXPECT_EQ(isotropy_prob(4, 3), frac(7717, 7744));
}

TEST(Isotropy, CappedEnumerationBrackets) {
  for (Int p : {3, 5}) {
    const ClassPredicate iso = [p](const SymClass& c) { return isotropic_by_invariants(qp_class(c, p), p); };
    for (int n = 1; n <= 4; ++n) {
      const Interval b = event_prob_capped(iso, n, p, 6);
      EXPECT_TRUE(b.contains(isotropy_prob(n, p))) << n;
    }
  }
}

TEST(RhoLimit, BracketsLargeN) {
  for (Int p : {3, 5})
    for (SquareClass a : kAllSquareClasses)
      for (int b : {1, -1}) {
        const Interval lim = rho_limit(a, b, p);
        EXPECT_LT(distance(lim, rho_n(a, b, 40, p)), rpow(p, -20));
        EXPECT_LT(distance(lim, rho_n(a, b, 41, p)), rpow(p, -20));
      }
}

TEST(Partitions, EnumerationCounts) {
  const int counts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(static_cast<int>(partitions_of(k).size()), counts[k]);
  EXPECT_EQ(partitions_of(5, 2).size(), 3u);
  EXPECT_EQ(Partition({1, 3, 0, 1}).label(), "(3,1,1)");
  EXPECT_EQ(Partition({3, 1, 1}).weighted_size(), 3 + 2 + 3);
}

TEST(Partitions, FiniteLawSumsToOne) {
  for (Int p : {3, 5})
    for (int n = 1; n <= 4; ++n) {
      BigRational total = 0;
      for (int k = 0; k <= 14; ++k)
        for (const auto& lambda : partitions_of(k, n)) total += finite_partition_prob(lambda, n, p);
      EXPECT_LT(1 - total, rpow(p, -6));
      EXPECT_GT(1 - total, 0);
    }
  EXPECT_THROW(finite_partition_prob(Partition({1, 1, 1}), 2, 3), LengthExceedsN);
}

TEST(Partitions, LimitMassBound) {
  const PartitionMass pm = partition_mass(3, 12);
  EXPECT_LE(pm.partial.lower, 1);
  EXPECT_LE(1 - pm.partial.upper, pm.tail);
  EXPECT_LT(pm.tail, frac(1, 10000));
}

TEST(DeterminantLaw, SumsWithinCap) {
  BigRational total = 0;
  for (int k = 0; k <= 10; ++k) total += det_dist(3, k, 3, 10).lower;
  EXPECT_LT(1 - total, rpow(3, -9));
  EXPECT_EQ(det_dist(2, 0, 3, 4).lower, sym_eldiv_prob(EldivSequence({0, 0}), 3));
  EXPECT_THROW(det_dist(2, 5, 3, 4), InvalidArgument);
}
