#include "padicsym/matrix.hpp"

#include <sstream>

namespace padicsym {

namespace {

// b / a for val(a) <= val(b); exact in the sense a * q == b mod p^K.
Int quotient(const Ring& ring, Int a, Int b) {
  int va = val_p(ring, a), vb = val_p(ring, b);
  if (vb >= ring.K()) return 0;
  Int shifted = ring.power(vb - va);
  return ring.mul(ring.mul(shifted, unit_part(ring, b)), inv_mod(ring, unit_part(ring, a)));
}

}  // namespace

Int det_mod(const Ring& ring, const ResidueMatrix& A0) {
  eigen_assert(A0.rows() == A0.cols());
  ResidueMatrix A = reduce(ring, A0);
  const Eigen::Index n = A.rows();
  Int det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index best = -1;
    int best_v = ring.K();
    for (Eigen::Index r = c; r < n; ++r) {
      int v = val_p(ring, A(r, c));
      if (v < best_v) {
        best_v = v;
        best = r;
      }
    }
    if (best < 0) return 0;
    if (best != c) {
      A.row(best).swap(A.row(c));
      det = ring.neg(det);
    }
    for (Eigen::Index r = c + 1; r < n; ++r) {
      Int q = quotient(ring, A(c, c), A(r, c));
      if (q == 0) continue;
      for (Eigen::Index k = c; k < n; ++k) A(r, k) = ring.sub(A(r, k), ring.mul(q, A(c, k)));
    }
    det = ring.mul(det, A(c, c));
  }
  return det;
}

ResidueMatrix inverse_mod(const Ring& ring, const ResidueMatrix& A0) {
  eigen_assert(A0.rows() == A0.cols());
  const Eigen::Index n = A0.rows();
  ResidueMatrix A = reduce(ring, A0);
  ResidueMatrix B = ResidueMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && A(piv, c) % ring.p() == 0) ++piv;
    if (piv == n) throw NotAUnit("matrix is not invertible mod p^K");
    A.row(piv).swap(A.row(c));
    B.row(piv).swap(B.row(c));
    Int inv = inv_mod(ring, A(c, c));
    for (Eigen::Index k = 0; k < n; ++k) {
      A(c, k) = ring.mul(A(c, k), inv);
      B(c, k) = ring.mul(B(c, k), inv);
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || A(r, c) == 0) continue;
      Int f = A(r, c);
      for (Eigen::Index k = 0; k < n; ++k) {
        A(r, k) = ring.sub(A(r, k), ring.mul(f, A(c, k)));
        B(r, k) = ring.sub(B(r, k), ring.mul(f, B(c, k)));
      }
    }
  }
  return B;
}

int rank_mod_p(Int p, const ResidueMatrix& A0) {
  // plain F_p arithmetic so that p = 2 works too
  auto md = [p](Int x) { return ((x % p) + p) % p; };
  auto inv = [p](Int x) {
    Int r = 1, b = x, e = p - 2;
    for (; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  ResidueMatrix A = A0.unaryExpr(md);
  int rank = 0;
  for (Eigen::Index c = 0; c < A.cols() && rank < A.rows(); ++c) {
    Eigen::Index piv = rank;
    while (piv < A.rows() && A(piv, c) == 0) ++piv;
    if (piv == A.rows()) continue;
    A.row(piv).swap(A.row(rank));
    Int pinv = inv(A(rank, c));
    for (Eigen::Index r = rank + 1; r < A.rows(); ++r) {
      Int f = A(r, c) * pinv % p;
      if (f == 0) continue;
      for (Eigen::Index k = c; k < A.cols(); ++k) A(r, k) = md(A(r, k) - f * A(rank, k));
    }
    ++rank;
  }
  return rank;
}

std::vector<std::pair<int, int>> upper_triangle(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

ResidueMatrix sample_sym_matrix(int n, const Ring& ring, RandomStream& rng) {
  ResidueMatrix X(n, n);
  for (auto [i, j] : upper_triangle(n)) {
    X(i, j) = sample_uniform(ring, rng);
    X(j, i) = X(i, j);
  }
  return X;
}

ResidueMatrix sample_invertible(int n, const Ring& ring, RandomStream& rng) {
  for (;;) {
    ResidueMatrix U(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) U(i, j) = sample_uniform(ring, rng);
    if (rank_mod_p(ring.p(), U) == n) return U;
  }
}

std::string to_json(const ResidueMatrix& A) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) os << ',';
      os << A(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace padicsym
