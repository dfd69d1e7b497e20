#include <gtest/gtest.h>

#include "padicsym/densities.hpp"
#include "padicsym/oracle.hpp"

using namespace padicsym;

TEST(Orbits, PartitionAllMatrices) {
  for (auto [n, p, K] : {std::tuple{1, 3, 3}, std::tuple{1, 5, 2}, std::tuple{2, 3, 1}, std::tuple{2, 3, 2},
                         std::tuple{2, 5, 1}, std::tuple{3, 3, 1}}) {
    const auto orbits = enumerate_orbits(n, p, K);
    std::int64_t total = 0;
    for (const auto& o : orbits) total += o.size;
    std::int64_t states = 1;
    for (int i = 0; i < K * n * (n + 1) / 2; ++i) states *= p;
    EXPECT_EQ(total, states);
  }
  // n = 1 mod p^K: zero plus, for each k < K, the two square classes
  EXPECT_EQ(enumerate_orbits(1, 3, 3).size(), 7u);
  // symmetric forms over F_p: rank r forms split by determinant class
  EXPECT_EQ(enumerate_orbits(2, 3, 1).size(), 5u);
}

TEST(Orbits, OrbitTimesStabilizerIsGroupOrder) {
  const Int p = 3;
  const int K = 2;
  const Ring ring(p, K);
  const BigInt group = gl_order(2, p, K);
  for (const auto& o : enumerate_orbits(2, p, K)) {
    SymClass cls;
    try {
      cls = sym_canonical(ring, o.representative).cls;
    } catch (const PrecisionExhausted&) {
      continue;
    }
    EXPECT_EQ(BigInt(static_cast<long>(o.size)) * stabilizer_count(cls, p, K), group) << cls.label();
  }
}

TEST(Orbits, BudgetEnforced) { EXPECT_THROW(enumerate_orbits(3, 3, 2), BudgetExceeded); }

TEST(GroupOrder, SmallCases) {
  EXPECT_EQ(gl_order(1, 3, 1), 2);
  EXPECT_EQ(gl_order(2, 3, 1), 48);
  EXPECT_EQ(gl_order(2, 2 + 1, 2), 48 * BigInt(81));
}

TEST(Stabilizers, ClosedFormWithinRange) {
  for (Int p : {3, 5})
    for (int K = 1; K <= 3; ++K)
      for (const auto& e : eldivs_up_to(2, K - 1)) {
        if (e.weight() > K - 1 || p * p * p * p > 1000 && K == 3) continue;
        for (const auto& cls : classes_over(e))
          EXPECT_EQ(stabilizer_count(cls, p, K), stabilizer_count_formula(cls, p, K))
              << cls.label() << " K=" << K << " p=" << p;
      }
}

TEST(Stabilizers, OrthogonalGroups) {
  EXPECT_EQ(orth_count_mod(2, 1, 3, 1), 8);
  EXPECT_EQ(orth_count_mod(2, -1, 3, 1), 4);
  EXPECT_EQ(orth_count_mod(3, 1, 3, 1), 48);
  EXPECT_EQ(orth_count_mod(3, -1, 3, 1), 48);
  EXPECT_EQ(orth_count_mod(1, 1, 5, 3), 2);
  EXPECT_EQ(orth_count_mod(2, 1, 5, 1), orth_order(2, 1, 5));
  EXPECT_EQ(orth_count_mod(2, -1, 5, 1), orth_order(2, -1, 5));
  for (int k = 1; k <= 3; ++k)
    EXPECT_EQ(BigRational(orth_count_mod(2, 1, 3, k)), alpha_ns(2, 1, 3) * rpow(3, k));
  EXPECT_THROW(orth_count_mod(4, 1, 5, 3), BudgetExceeded);
}

TEST(Minors, DiagonalAndSingular) {
  const Ring ring(3, 4);
  ResidueMatrix A(3, 2);
  A << 3, 0, 0, 9, 0, 0;
  EXPECT_EQ(eldivs_via_minors(ring, A), EldivSequence({1, 2}));
  ResidueMatrix Z = ResidueMatrix::Zero(2, 2);
  EXPECT_THROW(eldivs_via_minors(ring, Z), PrecisionExhausted);
  EXPECT_THROW(eldivs_via_minors(ring, ResidueMatrix::Identity(6, 6)), InvalidArgument);
}

TEST(RankTally, Totals) {
  const TallyTable t = rank_tally(2, 2, 2);
  EXPECT_EQ(t.total, 16);
  EXPECT_EQ(t.count("2"), 6);
  EXPECT_EQ(t.count("0"), 1);
  const TallyTable s = sym_rank_tally(2, 3);
  EXPECT_EQ(s.count("2"), 18);
  EXPECT_EQ(s.count("1"), 8);
  EXPECT_EQ(s.count("0"), 1);
  EXPECT_THROW(rank_tally(2, 2, 4), InvalidArgument);
  EXPECT_THROW(rank_tally(5, 5, 3), BudgetExceeded);
}

TEST(Tally, MergeAndCount) {
  TallyTable a, b;
  a.add("x", 2);
  b.add("x");
  b.add("y", 3);
  a.merge(b);
  EXPECT_EQ(a.count("x"), 3);
  EXPECT_EQ(a.count("y"), 3);
  EXPECT_EQ(a.count("z"), 0);
  EXPECT_EQ(a.total, 6);
}
