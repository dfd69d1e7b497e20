#pragma once

// Dense matrices over Z/p^K stored as Eigen integer matrices.
//
// Eigen supplies storage, blocks and row/column swaps; arithmetic that must
// reduce mod p^K goes through the free functions below since Eigen's own
// operator* would overflow.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "padicsym/padic.hpp"

namespace padicsym {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ResidueMatrix = MatrixX<Int>;
using ResidueVector = VectorX<Int>;

template <typename Derived>
ResidueMatrix reduce(const Ring& ring, const Eigen::MatrixBase<Derived>& A) {
  return A.unaryExpr([&ring](Int x) { return ring.reduce(x); });
}

template <typename DA, typename DB>
ResidueMatrix mul(const Ring& ring, const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B) {
  eigen_assert(A.cols() == B.rows());
  ResidueMatrix C(A.rows(), B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      __int128 acc = 0;
      for (Eigen::Index k = 0; k < A.cols(); ++k) {
        acc += static_cast<__int128>(A(i, k)) * B(k, j);
        acc %= ring.modulus();
      }
      C(i, j) = ring.reduce(acc);
    }
  return C;
}

/// U * X * U^T mod p^K.
template <typename DU, typename DX>
ResidueMatrix congruence(const Ring& ring, const Eigen::MatrixBase<DU>& U, const Eigen::MatrixBase<DX>& X) {
  return mul(ring, mul(ring, U, X), U.transpose());
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& X) {
  return X.rows() == X.cols() && X == X.transpose();
}

template <typename DA, typename DB>
bool congruent_mod(const Ring& ring, const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B) {
  return A.rows() == B.rows() && A.cols() == B.cols() && reduce(ring, A) == reduce(ring, B);
}

/// Determinant mod p^K by valuation-pivoted elimination.
Int det_mod(const Ring& ring, const ResidueMatrix& A);

/// Inverse mod p^K; throws NotAUnit when det is not a unit.
ResidueMatrix inverse_mod(const Ring& ring, const ResidueMatrix& A);

/// Rank of the reduction mod p over F_p; any prime p < 2^31.
int rank_mod_p(Int p, const ResidueMatrix& A);

/// Symmetric n x n matrix with independent Haar entries on and above the diagonal.
ResidueMatrix sample_sym_matrix(int n, const Ring& ring, RandomStream& rng);

/// Uniform element of GL_n(Z/p^K) by rejection on the determinant.
ResidueMatrix sample_invertible(int n, const Ring& ring, RandomStream& rng);

/// Index of the upper triangle (i <= j) in row-major order, the order in
/// which sample_sym_matrix draws entries.
std::vector<std::pair<int, int>> upper_triangle(int n);

std::string to_json(const ResidueMatrix& A);

}  // namespace padicsym
