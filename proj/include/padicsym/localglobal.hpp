#pragma once

// Densities of integer matrices as Euler products of the local densities,
// evaluated as outward-rounded intervals.

#include <string>
#include <vector>

#include "padicsym/rational.hpp"

namespace padicsym {

inline constexpr int kInfiniteN = -1;

struct DecimalInterval {
  std::string lower;  // rounded down
  std::string upper;  // rounded up
  double lower_d = 0;
  double upper_d = 0;
  bool contains(double x) const { return lower_d <= x && x <= upper_d; }
  /// distance from x to the interval
  double distance(double x) const;
};

struct EulerProductResult {
  int n = 0;  // kInfiniteN for the n -> infinity limit
  Int prime_cutoff = 0;
  bool assume_p2 = true;
  DecimalInterval value;
  double tail_bound = 0;  // bound on 1 - prod_{p > cutoff} local factor
};

/// Local factors at p (p = 2 allowed), for finite n.
BigRational local_first_divisors_one(int n, Int p);
BigRational local_squarefree_det(int n, Int p);
/// 1 - local factor <= C p^{-e} for every prime p above the cutoffs used here.
struct LocalDefect {
  double C;
  int e;
};
LocalDefect first_divisors_defect(int n);
LocalDefect squarefree_defect(int n);

/// Square n x n integer matrices whose first n-1 elementary divisors are 1.
EulerProductResult density_first_divisors_one(int n, Int cutoff, bool assume_p2 = true);
/// Square n x n integer matrices with square-free determinant.
EulerProductResult density_squarefree_det(int n, Int cutoff, bool assume_p2 = true);

/// prod zeta(e)^{-1} over the given exponents; each zeta by its Euler product
/// over p <= cutoff with the tail sum_{m > cutoff} m^{-e} < cutoff^{1-e}/(e-1).
DecimalInterval zeta_product(const std::vector<int>& exponents, Int cutoff);

std::vector<Int> primes_up_to(Int cutoff);

}  // namespace padicsym
