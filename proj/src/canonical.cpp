#include "padicsym/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padicsym {

EldivSequence::EldivSequence(std::vector<int> k) : k_(std::move(k)) {
  for (int x : k_)
    if (x < 0) throw InvalidArgument("elementary divisor exponents must be >= 0");
  if (!std::is_sorted(k_.begin(), k_.end()))
    throw InvalidArgument("elementary divisor exponents must be non-decreasing");
}

bool EldivSequence::finite() const {
  return std::none_of(k_.begin(), k_.end(), [](int x) { return x == kInfinity; });
}

std::map<int, int> EldivSequence::multiplicities() const {
  std::map<int, int> m;
  for (int x : k_)
    if (x != kInfinity) ++m[x];
  return m;
}

int EldivSequence::multiplicity(int k) const {
  return static_cast<int>(std::count(k_.begin(), k_.end(), k));
}

long EldivSequence::weight() const {
  if (!finite()) throw SingularClass("weight of a sequence with an infinite exponent");
  return std::accumulate(k_.begin(), k_.end(), 0L);
}

long EldivSequence::D() const {
  if (!finite()) throw SingularClass("D of a sequence with an infinite exponent");
  long d = 0;
  for (std::size_t i = 0; i < k_.size(); ++i)
    for (std::size_t j = i + 1; j < k_.size(); ++j) d += k_[j] - k_[i];
  return d;
}

long EldivSequence::D_from_multiplicities() const {
  auto m = multiplicities();
  long d = 0;
  for (auto a = m.begin(); a != m.end(); ++a)
    for (auto b = std::next(a); b != m.end(); ++b)
      d += static_cast<long>(a->second) * b->second * (b->first - a->first);
  return d;
}

std::vector<int> EldivSequence::blocks() const {
  std::vector<int> out;
  for (auto [k, m] : multiplicities()) out.push_back(k);
  return out;
}

std::string EldivSequence::label() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (i) os << ',';
    if (k_[i] == kInfinity)
      os << "inf";
    else
      os << k_[i];
  }
  return os.str();
}

EldivSequence EldivSequence::parse(const std::string& csv) {
  std::vector<int> k;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "inf") {
      k.push_back(kInfinity);
      continue;
    }
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("bad exponent '" + item + "'");
    }
    if (pos != item.size()) throw InvalidArgument("bad exponent '" + item + "'");
    k.push_back(v);
  }
  return EldivSequence(std::move(k));
}

SymClass::SymClass(EldivSequence e, std::map<int, int> s) : eldivs(std::move(e)), signs(std::move(s)) {
  auto blocks = eldivs.blocks();
  if (signs.size() != blocks.size()) throw InvalidArgument("one sign per elementary-divisor block required");
  for (int k : blocks) {
    auto it = signs.find(k);
    if (it == signs.end() || (it->second != 1 && it->second != -1))
      throw InvalidArgument("signs must be + or - on every block");
  }
}

SymClass::SymClass(EldivSequence e, const std::vector<int>& block_signs) : eldivs(std::move(e)) {
  auto blocks = eldivs.blocks();
  if (blocks.size() != block_signs.size())
    throw InvalidArgument("expected " + std::to_string(blocks.size()) + " signs, got " +
                          std::to_string(block_signs.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (block_signs[i] != 1 && block_signs[i] != -1) throw InvalidArgument("signs must be + or -");
    signs[blocks[i]] = block_signs[i];
  }
}

int SymClass::sign(int k) const {
  auto it = signs.find(k);
  return it == signs.end() ? 1 : it->second;
}

std::string SymClass::label() const {
  std::string out = eldivs.label() + "|";
  bool first = true;
  for (auto [k, s] : signs) {
    if (!first) out += ',';
    out += s > 0 ? '+' : '-';
    first = false;
  }
  return out;
}

SymClass SymClass::parse(const std::string& label) {
  auto bar = label.find('|');
  if (bar == std::string::npos) throw InvalidArgument("class label needs the form 'k,..|s,..'");
  std::vector<int> s;
  for (char c : label.substr(bar + 1)) {
    if (c == '+') s.push_back(1);
    if (c == '-') s.push_back(-1);
  }
  return SymClass(EldivSequence::parse(label.substr(0, bar)), s);
}

std::vector<SymClass> classes_over(const EldivSequence& e) {
  auto blocks = e.blocks();
  std::vector<SymClass> out;
  for (unsigned mask = 0; mask < (1u << blocks.size()); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < blocks.size(); ++i) s.push_back((mask >> (blocks.size() - 1 - i)) & 1 ? -1 : 1);
    out.emplace_back(e, s);
  }
  return out;
}

namespace {

// q with a * q == b mod p^K, assuming val(a) <= val(b).
Int quotient(const Ring& ring, Int a, Int b) {
  int va = val_p(ring, a), vb = val_p(ring, b);
  if (vb >= ring.K()) return 0;
  return ring.mul(ring.mul(ring.power(vb - va), unit_part(ring, b)), inv_mod(ring, unit_part(ring, a)));
}

void row_axpy(const Ring& ring, ResidueMatrix& A, Eigen::Index dst, Eigen::Index src, Int c) {
  for (Eigen::Index k = 0; k < A.cols(); ++k) A(dst, k) = ring.add(A(dst, k), ring.mul(c, A(src, k)));
}

void col_axpy(const Ring& ring, ResidueMatrix& A, Eigen::Index dst, Eigen::Index src, Int c) {
  for (Eigen::Index k = 0; k < A.rows(); ++k) A(k, dst) = ring.add(A(k, dst), ring.mul(c, A(k, src)));
}

// X <- E X E^T and P <- E P for the elementary E adding c * (row src) to row dst.
void sym_axpy(const Ring& ring, ResidueMatrix& X, ResidueMatrix& P, Eigen::Index dst, Eigen::Index src, Int c) {
  row_axpy(ring, X, dst, src, c);
  col_axpy(ring, X, dst, src, c);
  row_axpy(ring, P, dst, src, c);
}

void sym_swap(ResidueMatrix& X, ResidueMatrix& P, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  X.row(i).swap(X.row(j));
  X.col(i).swap(X.col(j));
  P.row(i).swap(P.row(j));
}

void row_scale(const Ring& ring, ResidueMatrix& P, Eigen::Index i, Int c) {
  for (Eigen::Index k = 0; k < P.cols(); ++k) P(i, k) = ring.mul(P(i, k), c);
}

}  // namespace

SmithForm smith_normal_form(const Ring& ring, const ResidueMatrix& A0) {
  ResidueMatrix B = reduce(ring, A0);
  const Eigen::Index rows = B.rows(), cols = B.cols(), r = std::min(rows, cols);
  ResidueMatrix P = ResidueMatrix::Identity(rows, rows);
  ResidueMatrix Q = ResidueMatrix::Identity(cols, cols);
  std::vector<int> k;
  for (Eigen::Index t = 0; t < r; ++t) {
    Eigen::Index bi = -1, bj = -1;
    int best = ring.K();
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < cols; ++j) {
        int v = val_p(ring, B(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) {
      k.resize(r, EldivSequence::kInfinity);
      break;
    }
    B.row(bi).swap(B.row(t));
    P.row(bi).swap(P.row(t));
    B.col(bj).swap(B.col(t));
    Q.col(bj).swap(Q.col(t));
    for (Eigen::Index i = t + 1; i < rows; ++i) {
      Int c = quotient(ring, B(t, t), B(i, t));
      if (c) {
        row_axpy(ring, B, i, t, ring.neg(c));
        row_axpy(ring, P, i, t, ring.neg(c));
      }
    }
    for (Eigen::Index j = t + 1; j < cols; ++j) {
      Int c = quotient(ring, B(t, t), B(t, j));
      if (c) {
        col_axpy(ring, B, j, t, ring.neg(c));
        col_axpy(ring, Q, j, t, ring.neg(c));
      }
    }
    Int inv = inv_mod(ring, unit_part(ring, B(t, t)));
    row_scale(ring, B, t, inv);
    row_scale(ring, P, t, inv);
    k.push_back(best);
  }
  // P A Q = Sigma, so A = P^{-1} Sigma Q^{-1}
  return {EldivSequence(k), inverse_mod(ring, P), inverse_mod(ring, Q)};
}

Diagonalization diagonalize(const Ring& ring, const ResidueMatrix& X0) {
  if (!is_symmetric(X0)) throw InvalidArgument("matrix is not symmetric");
  ResidueMatrix X = reduce(ring, X0);
  const Eigen::Index n = X.rows();
  ResidueMatrix P = ResidueMatrix::Identity(n, n);
  std::vector<int> k(n, ring.K());
  std::vector<Int> u(n, 0);
  for (Eigen::Index t = 0; t < n; ++t) {
    int best = ring.K();
    for (Eigen::Index i = t; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) best = std::min(best, val_p(ring, X(i, j)));
    if (best == ring.K()) break;
    Eigen::Index piv = -1;
    for (Eigen::Index i = t; i < n && piv < 0; ++i)
      if (val_p(ring, X(i, i)) == best) piv = i;
    if (piv < 0) {
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < n && pi < 0; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (val_p(ring, X(i, j)) == best) {
            pi = i;
            pj = j;
            break;
          }
      // x_ii + 2 x_ij + x_jj keeps the minimal valuation since 2 is a unit
      sym_axpy(ring, X, P, pi, pj, 1);
      if (val_p(ring, X(pi, pi)) != best) {
        sym_axpy(ring, X, P, pi, pj, ring.neg(2));
      }
      piv = pi;
    }
    sym_swap(X, P, piv, t);
    for (Eigen::Index i = t + 1; i < n; ++i) {
      Int c = quotient(ring, X(t, t), X(i, t));
      if (c) sym_axpy(ring, X, P, i, t, ring.neg(c));
    }
    k[t] = best;
    u[t] = unit_part(ring, X(t, t));
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return k[a] < k[b]; });
  Diagonalization out{ResidueMatrix(n, n), std::vector<int>(n), std::vector<Int>(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.P.row(i) = P.row(order[i]);
    out.k[i] = k[order[i]];
    out.u[i] = u[order[i]];
  }
  return out;
}

ResidueMatrix canonical_diagonal(const Ring& ring, const SymClass& cls) {
  const int n = cls.n();
  if (!cls.eldivs.finite()) throw SingularClass("canonical diagonal of a singular class");
  ResidueMatrix D = ResidueMatrix::Zero(n, n);
  const Int r = nonsquare(ring.p());
  for (int i = 0; i < n; ++i) {
    int k = cls.eldivs[i];
    if (k >= ring.K()) continue;
    bool last = i + 1 == n || cls.eldivs[i + 1] != k;
    Int unit = (last && cls.sign(k) < 0) ? r : 1;
    D(i, i) = ring.mul(ring.power(k), unit);
  }
  return D;
}

CanonicalForm sym_canonical(const Ring& ring, const ResidueMatrix& X) {
  Diagonalization d = diagonalize(ring, X);
  const int n = static_cast<int>(X.rows());
  long M = 0;
  for (int k : d.k) {
    if (k >= ring.K()) throw PrecisionExhausted("determinant is zero at precision K=" + std::to_string(ring.K()));
    M += k;
  }
  if (M > ring.K() - 1)
    throw PrecisionExhausted("determinant valuation " + std::to_string(M) + " needs K >= " + std::to_string(M + 1));

  ResidueMatrix& P = d.P;
  const Int r = nonsquare(ring.p());
  const Int r_inv = inv_mod(ring, r);
  std::vector<bool> is_r(n, false);
  for (int i = 0; i < n; ++i) {
    Int unit = d.u[i];
    if (chi(ring, unit) == QuadChar::Minus) {
      unit = ring.mul(unit, r_inv);
      is_r[i] = true;
    }
    row_scale(ring, P, i, inv_mod(ring, sqrt_unit(ring, unit)));
  }

  // x^2 + y^2 == 1/r, so [[x,y],[-y,x]] diag(r,r) [[x,y],[-y,x]]^T == I
  Int x = 0, y = 0;
  for (Int t = 0; t < ring.p(); ++t) {
    Int c = ring.sub(r_inv, ring.mul(t, t));
    if (chi(ring, c) == QuadChar::Plus) {
      x = sqrt_unit(ring, c);
      y = t;
      break;
    }
  }

  std::map<int, int> signs;
  for (int a = 0; a < n;) {
    int b = a;
    while (b < n && d.k[b] == d.k[a]) ++b;
    std::vector<int> rs;
    for (int i = a; i < b; ++i)
      if (is_r[i]) rs.push_back(i);
    for (std::size_t t = 0; t + 1 < rs.size(); t += 2) {
      int i = rs[t], j = rs[t + 1];
      ResidueMatrix Pi = P.row(i), Pj = P.row(j);
      for (Eigen::Index c = 0; c < n; ++c) {
        P(i, c) = ring.add(ring.mul(x, Pi(0, c)), ring.mul(y, Pj(0, c)));
        P(j, c) = ring.sub(ring.mul(x, Pj(0, c)), ring.mul(y, Pi(0, c)));
      }
      is_r[i] = is_r[j] = false;
    }
    if (rs.size() % 2 == 1) {
      P.row(rs.back()).swap(P.row(b - 1));
      std::swap(is_r[rs.back()], is_r[b - 1]);
    }
    signs[d.k[a]] = rs.size() % 2 == 1 ? -1 : 1;
    a = b;
  }

  return {SymClass(EldivSequence(d.k), std::move(signs)), inverse_mod(ring, P)};
}

QpClass qp_class(const SymClass& cls, Int p) {
  if (!cls.eldivs.finite()) throw SingularClass("qp_class needs finite elementary divisors");
  const int n = cls.n();
  std::vector<SquareClass> a;
  for (int i = 0; i < n; ++i) {
    int k = cls.eldivs[i];
    bool last = i + 1 == n || cls.eldivs[i + 1] != k;
    a.push_back(SquareClass::from_parts(k, last ? cls.sign(k) : 1));
  }
  QpClass q;
  q.n = n;
  for (auto c : a) q.disc = q.disc * c;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) q.hasse *= hilbert(a[i], a[j], p);
  return q;
}

int rank_d(const Ring& ring, const ResidueMatrix& X, int m) {
  if (m > ring.K()) throw PrecisionExhausted("rank_d needs m <= K");
  auto e = smith_normal_form(ring, X).eldivs;
  long sum = 0;
  int j = 0;
  for (int k : e.exponents()) {
    if (k == EldivSequence::kInfinity) break;
    sum += k;
    if (sum >= m) break;
    ++j;
  }
  return j;
}

bool isotropic_by_invariants(const QpClass& c, Int p) {
  const auto minus_one = SquareClass::minus_one(p);
  switch (c.n) {
    case 0:
    case 1:
      return false;
    case 2:
      return c.disc == minus_one;
    case 3:
      return c.hasse == hilbert(minus_one, c.disc, p);
    case 4:
      return !(c.disc == SquareClass::one() && c.hasse == -1);
    default:
      return true;
  }
}

}  // namespace padicsym
