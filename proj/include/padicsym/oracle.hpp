#pragma once

// Brute-force ground truth. Nothing here calls into the canonical-form code,
// so agreement with it is an independent check.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "padicsym/canonical.hpp"
#include "padicsym/rational.hpp"

namespace padicsym {

struct TallyTable {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;

  void add(const std::string& label, std::int64_t c = 1) {
    counts[label] += c;
    total += c;
  }
  void merge(const TallyTable& other) {
    for (const auto& [label, c] : other.counts) add(label, c);
  }
  std::int64_t count(const std::string& label) const {
    auto it = counts.find(label);
    return it == counts.end() ? 0 : it->second;
  }
  friend bool operator==(const TallyTable&, const TallyTable&) = default;
};

inline constexpr std::int64_t kDefaultBudget = 1'000'000;

struct Orbit {
  ResidueMatrix representative;  // smallest member in row-major digit order
  std::int64_t size = 0;
};

/// Orbits of X -> U X U^T on symmetric n x n matrices mod p^K, by closure under
/// transvections and a diagonal unit-group generator.
std::vector<Orbit> enumerate_orbits(int n, Int p, int K, std::int64_t budget = kDefaultBudget);

BigInt gl_order(int n, Int p, int K);

/// #{U invertible mod p^K : U D U^T == D} for D = canonical_diagonal(cls).
BigInt stabilizer_count(const SymClass& cls, Int p, int K, std::int64_t budget = kDefaultBudget);
/// prod alpha_{m_i}^{s_i} p^{K n(n-1)/2} prod_i p^{k_i (n-i+1)}
BigInt stabilizer_count_formula(const SymClass& cls, Int p, int K);

/// #{U : U 1^s U^T == 1^s mod p^k}
BigInt orth_count_mod(int n, int s, Int p, int k, std::int64_t budget = kDefaultBudget);

/// Prefix sums k_1 + ... + k_j as the minimal valuation of j x j minors.
EldivSequence eldivs_via_minors(const Ring& ring, const ResidueMatrix& A);

/// Counts n x m matrices over F_q (q prime) by rank; labels are the rank.
TallyTable rank_tally(int n, int m, Int q, std::int64_t budget = kDefaultBudget);
TallyTable sym_rank_tally(int n, Int p, std::int64_t budget = kDefaultBudget);

}  // namespace padicsym
