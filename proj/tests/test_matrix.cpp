#include <gtest/gtest.h>

#include <set>

#include "padicsym/matrix.hpp"

using namespace padicsym;

namespace {

// cofactor expansion, no pivoting
Int laplace(const Ring& ring, const ResidueMatrix& A) {
  const auto n = A.rows();
  if (n == 1) return ring.reduce(A(0, 0));
  Int det = 0;
  for (Eigen::Index c = 0; c < n; ++c) {
    ResidueMatrix minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = A(i, j);
    const Int term = ring.mul(A(0, c), laplace(ring, minor));
    det = c % 2 ? ring.sub(det, term) : ring.add(det, term);
  }
  return det;
}

ResidueMatrix random_matrix(int rows, int cols, const Ring& ring, RandomStream& rng) {
  ResidueMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = sample_uniform(ring, rng);
  return A;
}

}  // namespace

TEST(Determinant, MatchesCofactorExpansion) {
  RandomStream rng(1);
  for (Int p : {3, 5}) {
    const Ring ring(p, 4);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + trial % 5;
      ResidueMatrix A = random_matrix(n, n, ring, rng);
      if (trial % 3 == 0) A.row(0) = ring.p() * A.row(n - 1);  // force non-units
      for (Eigen::Index i = 0; i < A.size(); ++i) A(i) = ring.reduce(A(i));
      EXPECT_EQ(det_mod(ring, A), laplace(ring, A));
    }
  }
}

TEST(Inverse, RoundTrip) {
  RandomStream rng(2);
  const Ring ring(7, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const ResidueMatrix U = sample_invertible(n, ring, rng);
    EXPECT_NE(det_mod(ring, U) % 7, 0);
    EXPECT_EQ(mul(ring, U, inverse_mod(ring, U)), ResidueMatrix::Identity(n, n));
  }
  ResidueMatrix S(2, 2);
  S << 3, 0, 0, 1;
  const Ring r3(3, 2);
  EXPECT_THROW(inverse_mod(r3, S), NotAUnit);
}

TEST(RankModP, MatchesSubsetSpans) {
  // rank = log_q of the number of distinct vectors in the row span
  RandomStream rng(3);
  for (Int q : {2, 3}) {
    for (int trial = 0; trial < 60; ++trial) {
      const int rows = 1 + trial % 3, cols = 1 + (trial / 3) % 3;
      ResidueMatrix A(rows, cols);
      for (Eigen::Index i = 0; i < A.size(); ++i) A(i) = rng.uniform(q);
      std::set<std::vector<Int>> span;
      Int combos = 1;
      for (int i = 0; i < rows; ++i) combos *= q;
      for (Int c = 0; c < combos; ++c) {
        std::vector<Int> v(cols, 0), coef(rows);
        Int rest = c;
        for (int i = 0; i < rows; ++i, rest /= q) coef[i] = rest % q;
        for (int j = 0; j < cols; ++j) {
          for (int i = 0; i < rows; ++i) v[j] += coef[i] * A(i, j);
          v[j] %= q;
        }
        span.insert(v);
      }
      int rank = 0;
      for (std::size_t s = span.size(); s > 1; s /= q) ++rank;
      EXPECT_EQ(rank_mod_p(q, A), rank);
    }
  }
}

TEST(Congruence, PreservesSymmetry) {
  RandomStream rng(4);
  const Ring ring(5, 3);
  const ResidueMatrix X = sample_sym_matrix(4, ring, rng);
  EXPECT_TRUE(is_symmetric(X));
  const ResidueMatrix U = sample_invertible(4, ring, rng);
  const ResidueMatrix Y = congruence(ring, U, X);
  EXPECT_TRUE(is_symmetric(Y));
  EXPECT_TRUE(congruent_mod(ring, congruence(ring, inverse_mod(ring, U), Y), X));
}

TEST(SymSample, UpperTriangleOrder) {
  const auto slots = upper_triangle(3);
  ASSERT_EQ(slots.size(), 6u);
  EXPECT_EQ(slots[1], std::make_pair(0, 1));
  EXPECT_EQ(slots[3], std::make_pair(1, 1));
  // same stream, same matrix
  const Ring ring(3, 3);
  RandomStream a(9), b(9);
  EXPECT_EQ(sample_sym_matrix(3, ring, a), sample_sym_matrix(3, ring, b));
}
