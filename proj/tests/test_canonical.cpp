#include <gtest/gtest.h>

#include "padicsym/canonical.hpp"
#include "padicsym/oracle.hpp"

using namespace padicsym;

namespace {

ResidueMatrix diag(std::initializer_list<Int> d) {
  ResidueMatrix X = ResidueMatrix::Zero(d.size(), d.size());
  int i = 0;
  for (Int v : d) X(i, i) = v, ++i;
  return X;
}

Int form(const Ring& ring, const ResidueMatrix& X, const ResidueVector& v) {
  return ring.reduce(static_cast<Int>((v.transpose() * X * v)(0, 0) % ring.modulus()));
}

// Nonzero primitive x with sum d_i x_i^2 == 0 mod p^3. For coefficients of
// valuation <= 1 this is equivalent to isotropy over Q_p.
bool search_isotropic(const std::vector<Int>& d, Int p) {
  const Int m = p * p * p;
  const int n = static_cast<int>(d.size());
  Int total = 1;
  for (int i = 0; i < n; ++i) total *= m;
  for (Int idx = 1; idx < total; ++idx) {
    Int rest = idx, q = 0;
    bool primitive = false;
    for (int i = 0; i < n; ++i, rest /= m) {
      const Int x = rest % m;
      primitive = primitive || x % p;
      q = (q + d[i] * (x * x % m)) % m;
    }
    if (primitive && q == 0) return true;
  }
  return false;
}

}  // namespace

TEST(EldivSequence, Basics) {
  const EldivSequence e({0, 0, 1, 3});
  EXPECT_EQ(e.weight(), 4);
  EXPECT_EQ(e.D(), e.D_from_multiplicities());
  EXPECT_EQ(e.D(), 1 + 3 + 1 + 3 + 2);
  EXPECT_EQ(e.multiplicity(0), 2);
  EXPECT_EQ(e.blocks(), (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(EldivSequence::parse(e.label()), e);
  EXPECT_THROW(EldivSequence({1, 0}), InvalidArgument);
  const EldivSequence inf({0, EldivSequence::kInfinity});
  EXPECT_FALSE(inf.finite());
  EXPECT_THROW(inf.weight(), SingularClass);
}

TEST(SymClass, LabelRoundTrip) {
  const SymClass cls(EldivSequence({0, 1, 1}), std::vector<int>{-1, 1});
  EXPECT_EQ(cls.label(), "0,1,1|-,+");
  EXPECT_EQ(SymClass::parse(cls.label()), cls);
  EXPECT_EQ(cls.sign(1), 1);
  EXPECT_THROW(SymClass(EldivSequence({0, 1}), std::vector<int>{1}), InvalidArgument);
  EXPECT_EQ(classes_over(EldivSequence({0, 0, 2})).size(), 4u);
}

TEST(Smith, ReconstructsAndMatchesMinors) {
  RandomStream rng(11);
  for (Int p : {3, 5}) {
    const Ring ring(p, 5);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 4;
      ResidueMatrix A(n, n);
      for (Eigen::Index i = 0; i < A.size(); ++i) A(i) = sample_uniform(ring, rng);
      if (trial % 2) A.row(0) = (A.row(0) * p).unaryExpr([&](Int x) { return ring.reduce(x); });
      SmithForm s;
      try {
        s = smith_normal_form(ring, A);
      } catch (const PrecisionExhausted&) {
        continue;
      }
      ResidueMatrix S = ResidueMatrix::Zero(n, n);
      for (int k = 0; k < n; ++k) S(k, k) = s.eldivs[k] >= ring.K() ? 0 : ring.power(s.eldivs[k]);
      EXPECT_EQ(mul(ring, mul(ring, s.U, S), s.V), A);
      EXPECT_NE(det_mod(ring, s.U) % p, 0);
      EXPECT_NE(det_mod(ring, s.V) % p, 0);
      if (s.eldivs.finite()) EXPECT_EQ(s.eldivs, eldivs_via_minors(ring, A));
    }
  }
}

TEST(Canonical, SmallExamples) {
  const Ring ring(3, 3);
  ResidueMatrix H(2, 2);
  H << 0, 1, 1, 0;
  EXPECT_EQ(sym_canonical(ring, H).cls.label(), "0,0|-");
  EXPECT_EQ(sym_canonical(ring, diag({1, 1})).cls.label(), "0,0|+");
  EXPECT_EQ(sym_canonical(ring, diag({2, 2})).cls.label(), "0,0|+");  // r + r ~ 1 + 1
  EXPECT_EQ(sym_canonical(ring, diag({1, 3})).cls.label(), "0,1|+,+");
  EXPECT_EQ(sym_canonical(ring, diag({6, 2})).cls.label(), "0,1|-,-");
  EXPECT_EQ(sym_canonical(ring, diag({9, 1})).cls.label(), "0,2|+,+");
  EXPECT_THROW(sym_canonical(ring, diag({1, 27})), PrecisionExhausted);
  EXPECT_THROW(sym_canonical(ring, diag({3, 9})), PrecisionExhausted);  // M = 3 > K - 1
  EXPECT_THROW(sym_canonical(Ring(5, 3), diag({1, 0})), PrecisionExhausted);
}

TEST(Canonical, ReconstructsRandomMatrices) {
  RandomStream rng(12);
  for (Int p : {3, 5, 7}) {
    const Ring ring(p, 6);
    for (int trial = 0; trial < 500; ++trial) {
      const int n = 1 + trial % 5;
      const ResidueMatrix X = sample_sym_matrix(n, ring, rng);
      CanonicalForm cf;
      try {
        cf = sym_canonical(ring, X);
      } catch (const PrecisionExhausted&) {
        continue;
      }
      EXPECT_EQ(congruence(ring, cf.U, canonical_diagonal(ring, cf.cls)), X);
      EXPECT_NE(det_mod(ring, cf.U) % p, 0);
      const ResidueMatrix V = sample_invertible(n, ring, rng);
      EXPECT_EQ(sym_canonical(ring, congruence(ring, V, X)).cls, cf.cls);
    }
  }
}

TEST(Canonical, DiagonalizationIsCongruence) {
  RandomStream rng(13);
  const Ring ring(3, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const ResidueMatrix X = sample_sym_matrix(n, ring, rng);
    const Diagonalization d = diagonalize(ring, X);
    ResidueMatrix D = ResidueMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) D(i, i) = d.k[i] >= ring.K() ? 0 : ring.mul(ring.power(d.k[i]), d.u[i]);
    EXPECT_EQ(congruence(ring, d.P, X), D);
    EXPECT_TRUE(std::is_sorted(d.k.begin(), d.k.end()));
  }
}

TEST(QpClass, MatchesDiagonalHilbertProduct) {
  RandomStream rng(14);
  for (Int p : {3, 5}) {
    const Ring ring(p, 6);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + trial % 4;
      const ResidueMatrix X = sample_sym_matrix(n, ring, rng);
      SymClass cls;
      try {
        cls = sym_canonical(ring, X).cls;
      } catch (const PrecisionExhausted&) {
        continue;
      }
      const Diagonalization d = diagonalize(ring, X);
      SquareClass disc = SquareClass::one();
      int hasse = 1;
      std::vector<SquareClass> a;
      for (int i = 0; i < n; ++i) a.push_back(SquareClass::from_parts(d.k[i], to_int(chi(p, d.u[i]))));
      for (int i = 0; i < n; ++i) {
        disc = disc * a[i];
        for (int j = i + 1; j < n; ++j) hasse *= hilbert(a[i], a[j], p);
      }
      const QpClass q = qp_class(cls, p);
      EXPECT_EQ(q.disc, disc);
      EXPECT_EQ(q.hasse, hasse);
    }
  }
}

TEST(Isotropy, InvariantRulesMatchSearch) {
  for (Int p : {3, 5, 7}) {
    const Int r = nonsquare(p);
    const Int reps[4] = {1, r, p, p * r};
    const std::vector<int> sizes = p == 3 ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
    for (int n : sizes) {
      int combos = 1;
      for (int i = 0; i < n; ++i) combos *= 4;
      for (int c = 0; c < combos; ++c) {
        std::vector<Int> d;
        std::vector<SquareClass> cls;
        for (int i = 0, rest = c; i < n; ++i, rest /= 4) {
          d.push_back(reps[rest % 4]);
          cls.push_back(kAllSquareClasses[rest % 4]);
        }
        SquareClass disc = SquareClass::one();
        int hasse = 1;
        for (int i = 0; i < n; ++i) {
          disc = disc * cls[i];
          for (int j = i + 1; j < n; ++j) hasse *= hilbert(cls[i], cls[j], p);
        }
        EXPECT_EQ(isotropic_by_invariants({n, disc, hasse}, p), search_isotropic(d, p)) << "p=" << p << " n=" << n << " c=" << c;
      }
    }
  }
}

TEST(Isotropy, SearchWitnesses) {
  RandomStream rng(15);
  for (Int p : {3, 5}) {
    const Ring ring(p, 8);
    for (int trial = 0; trial < 400; ++trial) {
      const int n = 1 + trial % 4;
      const ResidueMatrix X = sample_sym_matrix(n, ring, rng);
      SymClass cls;
      try {
        cls = sym_canonical(ring, X).cls;
      } catch (const PrecisionExhausted&) {
        continue;
      }
      if (cls.eldivs[n - 1] > 2) continue;
      const bool iso = isotropic_by_invariants(qp_class(cls, p), p);
      const IsotropySearch s = isotropy_search(ring, X);
      EXPECT_EQ(s.certified, iso) << cls.label();
      if (!s.certified) continue;
      bool primitive = false;
      for (Eigen::Index i = 0; i < n; ++i) primitive = primitive || s.witness(i) % p;
      EXPECT_TRUE(primitive);
      EXPECT_EQ(form(ring, X, s.witness), 0);
    }
  }
  EXPECT_THROW(isotropy_search(Ring(3, 3), ResidueMatrix::Identity(5, 5)), InvalidArgument);
}

TEST(RankD, CountsPrefixSums) {
  const Ring ring(3, 5);
  const ResidueMatrix X = diag({1, 3, 27});
  EXPECT_EQ(rank_d(ring, X, 1), 1);
  EXPECT_EQ(rank_d(ring, X, 2), 2);
  EXPECT_EQ(rank_d(ring, X, 4), 2);
  EXPECT_EQ(rank_d(ring, X, 5), 3);
}
