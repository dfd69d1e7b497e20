#include "padicsym/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "padicsym/densities.hpp"

namespace padicsym {

namespace {

void require_budget(double work, std::int64_t budget, const std::string& what) {
  if (work > static_cast<double>(budget))
    throw BudgetExceeded(what + " needs " + std::to_string(static_cast<long double>(work)) +
                         " steps, budget is " + std::to_string(budget));
}

double dpow(Int base, long e) {
  double out = 1;
  for (long i = 0; i < e; ++i) out *= static_cast<double>(base);
  return out;
}

// Symmetric matrices mod q <-> integers, first upper-triangle entry most significant.
struct SymCodec {
  int n;
  Int q;
  std::vector<std::pair<int, int>> slots;

  SymCodec(int n_, Int q_) : n(n_), q(q_), slots(upper_triangle(n_)) {}

  std::int64_t encode(const ResidueMatrix& X) const {
    std::int64_t idx = 0;
    for (auto [i, j] : slots) idx = idx * q + X(i, j);
    return idx;
  }
  ResidueMatrix decode(std::int64_t idx) const {
    ResidueMatrix X(n, n);
    for (auto it = slots.rbegin(); it != slots.rend(); ++it) {
      X(it->first, it->second) = X(it->second, it->first) = idx % q;
      idx /= q;
    }
    return X;
  }
};

}  // namespace

BigInt gl_order(int n, Int p, int K) {
  BigInt out = ipow(p, static_cast<unsigned long>(K - 1) * n * n);
  for (int i = 0; i < n; ++i) out *= ipow(p, n) - ipow(p, i);
  return out;
}

std::vector<Orbit> enumerate_orbits(int n, Int p, int K, std::int64_t budget) {
  const Ring ring(p, K);
  const double states = dpow(ring.modulus(), static_cast<long>(n) * (n + 1) / 2);
  require_budget(states, budget, "orbit enumeration");
  require_budget(gl_order(n, p, K).get_d(), budget, "orbit enumeration (group order)");

  using Move = std::function<ResidueMatrix(const ResidueMatrix&)>;
  std::vector<Move> moves;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      moves.push_back([&ring, n, i, j](const ResidueMatrix& X) {
        ResidueMatrix E = ResidueMatrix::Identity(n, n);
        E(i, j) = 1;
        return congruence(ring, E, X);
      });
      if (i < j)
        moves.push_back([n, i, j](const ResidueMatrix& X) {
          ResidueMatrix Y = X;
          Y.row(i).swap(Y.row(j));
          Y.col(i).swap(Y.col(j));
          (void)n;
          return Y;
        });
    }
  const Int g = unit_group_generator(ring);
  for (int i = 0; i < n; ++i)
    moves.push_back([&ring, n, i, g](const ResidueMatrix& X) {
      ResidueMatrix E = ResidueMatrix::Identity(n, n);
      E(i, i) = g;
      return congruence(ring, E, X);
    });

  SymCodec codec(n, ring.modulus());
  const auto total = static_cast<std::int64_t>(states);
  std::vector<bool> seen(total, false);
  std::vector<Orbit> orbits;
  for (std::int64_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    Orbit orbit{codec.decode(start), 0};
    std::deque<std::int64_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      ResidueMatrix X = codec.decode(queue.front());
      queue.pop_front();
      ++orbit.size;
      for (const auto& move : moves) {
        std::int64_t idx = codec.encode(move(X));
        if (!seen[idx]) {
          seen[idx] = true;
          queue.push_back(idx);
        }
      }
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

namespace {

// Counts U mod p^K with U D U^T == D row by row; D diagonal.
BigInt count_isometries(const Ring& ring, const ResidueMatrix& D, std::int64_t budget) {
  const int n = static_cast<int>(D.rows());
  const double vectors = dpow(ring.modulus(), n);
  require_budget(vectors * n, budget, "isometry count");
  const auto nvec = static_cast<std::int64_t>(vectors);

  std::vector<ResidueVector> all;
  all.reserve(nvec);
  for (std::int64_t idx = 0; idx < nvec; ++idx) {
    ResidueVector v(n);
    std::int64_t rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      v(k) = rest % ring.modulus();
      rest /= ring.modulus();
    }
    all.push_back(v);
  }
  auto form = [&](const ResidueVector& a, const ResidueVector& b) {
    Int s = 0;
    for (int k = 0; k < n; ++k) s = ring.add(s, ring.mul(a(k), ring.mul(D(k, k), b(k))));
    return s;
  };
  std::vector<std::vector<int>> by_row(n);
  for (int i = 0; i < n; ++i)
    for (std::int64_t idx = 0; idx < nvec; ++idx)
      if (form(all[idx], all[idx]) == D(i, i)) by_row[i].push_back(static_cast<int>(idx));

  BigInt count = 0;
  ResidueMatrix U(n, n);
  std::function<void(int)> place = [&](int i) {
    if (i == n) {
      if (rank_mod_p(ring.p(), U) == n) ++count;
      return;
    }
    for (int idx : by_row[i]) {
      const ResidueVector& v = all[idx];
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = form(v, U.row(j).transpose()) == 0;
      if (!ok) continue;
      U.row(i) = v.transpose();
      place(i + 1);
    }
  };
  place(0);
  return count;
}

}  // namespace

BigInt stabilizer_count(const SymClass& cls, Int p, int K, std::int64_t budget) {
  const Ring ring(p, K);
  return count_isometries(ring, canonical_diagonal(ring, cls), budget);
}

BigInt stabilizer_count_formula(const SymClass& cls, Int p, int K) {
  const int n = cls.n();
  BigRational v = 1;
  for (auto [k, m] : cls.eldivs.multiplicities()) v *= alpha_ns(m, cls.sign(k), p);
  long e = static_cast<long>(K) * n * (n - 1) / 2;
  for (int i = 1; i <= n; ++i) e += static_cast<long>(cls.eldivs[i - 1]) * (n - i + 1);
  v *= rpow(p, e);
  if (v.get_den() != 1) throw Error("stabilizer closed form is not an integer");
  return v.get_num();
}

BigInt orth_count_mod(int n, int s, Int p, int k, std::int64_t budget) {
  if (n < 1) throw InvalidArgument("orth_count_mod needs n >= 1");
  const Ring ring(p, k);
  ResidueMatrix D = ResidueMatrix::Identity(n, n);
  if (s < 0) D(n - 1, n - 1) = nonsquare(p);
  return count_isometries(ring, D, budget);
}

namespace {

Int laplace_det(const Ring& ring, const ResidueMatrix& A) {
  const Eigen::Index n = A.rows();
  if (n == 1) return ring.reduce(A(0, 0));
  Int det = 0;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (A(0, c) == 0) continue;
    ResidueMatrix minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = A(i, j);
    Int term = ring.mul(A(0, c), laplace_det(ring, minor));
    det = (c % 2 == 0) ? ring.add(det, term) : ring.sub(det, term);
  }
  return det;
}

void combinations(int n, int j, std::vector<std::vector<int>>& out) {
  std::vector<int> sel(j);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == j) {
      out.push_back(sel);
      return;
    }
    for (int i = start; i < n; ++i) {
      sel[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

EldivSequence eldivs_via_minors(const Ring& ring, const ResidueMatrix& A0) {
  if (A0.rows() > 5 || A0.cols() > 5) throw InvalidArgument("eldivs_via_minors is limited to 5 x 5");
  const ResidueMatrix A = reduce(ring, A0);
  const int r = static_cast<int>(std::min(A.rows(), A.cols()));
  std::vector<int> k;
  int prev = 0;
  for (int j = 1; j <= r; ++j) {
    std::vector<std::vector<int>> rows, cols;
    combinations(static_cast<int>(A.rows()), j, rows);
    combinations(static_cast<int>(A.cols()), j, cols);
    int best = ring.K();
    ResidueMatrix sub(j, j);
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        for (int a = 0; a < j; ++a)
          for (int b = 0; b < j; ++b) sub(a, b) = A(rs[a], cs[b]);
        best = std::min(best, val_p(ring, laplace_det(ring, sub)));
      }
    if (best >= ring.K())
      throw PrecisionExhausted("all " + std::to_string(j) + "x" + std::to_string(j) + " minors vanish mod p^K");
    k.push_back(best - prev);
    prev = best;
  }
  return EldivSequence(k);
}

TallyTable rank_tally(int n, int m, Int q, std::int64_t budget) {
  if (!is_prime(q)) throw InvalidArgument("rank_tally needs a prime q");
  const double states = dpow(q, static_cast<long>(n) * m);
  require_budget(states, budget, "rank tally");
  TallyTable t;
  ResidueMatrix A(n, m);
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(states); ++idx) {
    std::int64_t rest = idx;
    for (int i = n - 1; i >= 0; --i)
      for (int j = m - 1; j >= 0; --j) {
        A(i, j) = rest % q;
        rest /= q;
      }
    t.add(std::to_string(rank_mod_p(q, A)));
  }
  return t;
}

TallyTable sym_rank_tally(int n, Int p, std::int64_t budget) {
  (void)OddPrime{p};
  const double states = dpow(p, static_cast<long>(n) * (n + 1) / 2);
  require_budget(states, budget, "symmetric rank tally");
  SymCodec codec(n, p);
  TallyTable t;
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(states); ++idx)
    t.add(std::to_string(rank_mod_p(p, codec.decode(idx))));
  return t;
}

}  // namespace padicsym
