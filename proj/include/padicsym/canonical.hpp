#pragma once

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicsym/matrix.hpp"

namespace padicsym {

/// Elementary-divisor exponents k_1 <= ... <= k_n. kInfinity marks a divisor
/// that is zero at the working precision.
class EldivSequence {
 public:
  static constexpr int kInfinity = INT_MAX;

  EldivSequence() = default;
  explicit EldivSequence(std::vector<int> k);

  int size() const { return static_cast<int>(k_.size()); }
  int operator[](int i) const { return k_[i]; }
  const std::vector<int>& exponents() const { return k_; }
  bool finite() const;

  /// m_k for every k that occurs (finite exponents only).
  std::map<int, int> multiplicities() const;
  int multiplicity(int k) const;
  /// M = sum k_i; requires finite().
  long weight() const;
  /// D = sum_{i<j} (k_j - k_i); requires finite().
  long D() const;
  /// D via sum_{i<j} m_i m_j (j - i).
  long D_from_multiplicities() const;
  /// Distinct exponents in increasing order.
  std::vector<int> blocks() const;

  std::string label() const;
  static EldivSequence parse(const std::string& csv);

  friend bool operator==(const EldivSequence&, const EldivSequence&) = default;
  friend auto operator<=>(const EldivSequence&, const EldivSequence&) = default;

 private:
  std::vector<int> k_;
};

/// GL_n(Z_p)-congruence class: eldivs plus one sign (+1 / -1) per block.
struct SymClass {
  EldivSequence eldivs;
  std::map<int, int> signs;

  SymClass() = default;
  SymClass(EldivSequence e, std::map<int, int> s);
  /// Signs listed in block order.
  SymClass(EldivSequence e, const std::vector<int>& block_signs);

  int n() const { return eldivs.size(); }
  int sign(int k) const;
  /// "0,1|+,-"
  std::string label() const;
  static SymClass parse(const std::string& label);

  friend bool operator==(const SymClass&, const SymClass&) = default;
  friend auto operator<=>(const SymClass&, const SymClass&) = default;
};

/// Every sign assignment on the blocks of e.
std::vector<SymClass> classes_over(const EldivSequence& e);

struct QpClass {
  int n = 0;
  SquareClass disc;
  int hasse = 1;
  friend bool operator==(const QpClass&, const QpClass&) = default;
};

struct SmithForm {
  EldivSequence eldivs;
  ResidueMatrix U;  // U * Sigma * V == A
  ResidueMatrix V;
};

SmithForm smith_normal_form(const Ring& ring, const ResidueMatrix& A);

/// Sigma * S: block k contributes m_k copies of p^k, the last one times r when s_k = -.
ResidueMatrix canonical_diagonal(const Ring& ring, const SymClass& cls);

struct CanonicalForm {
  SymClass cls;
  ResidueMatrix U;  // U * canonical_diagonal * U^T == X
};

/// Throws PrecisionExhausted when the class cannot be certified at this
/// precision (sum of exponents above K - 1).
CanonicalForm sym_canonical(const Ring& ring, const ResidueMatrix& X);

/// P with P X P^T == diag(p^{k_i} u_i) and k non-decreasing. Zero-at-precision
/// entries get k = K and u = 0. No precision requirement.
struct Diagonalization {
  ResidueMatrix P;
  std::vector<int> k;
  std::vector<Int> u;
};
Diagonalization diagonalize(const Ring& ring, const ResidueMatrix& X);

QpClass qp_class(const SymClass& cls, Int p);

int rank_d(const Ring& ring, const ResidueMatrix& X, int m);

bool isotropic_by_invariants(const QpClass& c, Int p);

struct IsotropySearch {
  bool certified = false;
  ResidueVector witness;  // primitive zero mod p^K, valid when certified
  int depth = 0;          // rescaling reductions used
};

/// Looks for a Hensel-liftable zero, rescaling through p-adic blocks when
/// none exists mod p. max_depth < 0 means 2K.
IsotropySearch isotropy_search(const Ring& ring, const ResidueMatrix& X, int max_depth = -1);

}  // namespace padicsym
