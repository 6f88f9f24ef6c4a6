#include "laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace laurent {

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  if (a.is_zero() || b.is_zero()) return r;
  // Dense accumulation over the exponent range of the product.
  const int lo = a.min_exp() + b.min_exp();
  const int hi = a.max_exp() + b.max_exp();
  std::vector<Int> acc(size_t(hi - lo + 1));
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) acc[size_t(ea + eb - lo)] += ca * cb;
  for (int e = lo; e <= hi; ++e)
    if (acc[size_t(e - lo)] != 0) r.c_.emplace(e, std::move(acc[size_t(e - lo)]));
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  for (const auto& [e, c] : c_) r.c_.emplace(-e, (e % 2 == 0) ? c : -c);
  return r;
}

Laurent Laurent::invert_u() const {
  Laurent r;
  for (const auto& [e, c] : c_) r.c_.emplace(-e, c);
  return r;
}

Int Laurent::const_term_at_u_inv_zero() const {
  if (!in_z_uinv())
    throw PositiveExponentPresent("constant term at u^-1=0 of " + str() +
                                  ": positive exponent present");
  return coeff(0);
}

Laurent Laurent::divide_exact(const Laurent& b) const {
  if (b.is_zero()) throw ZeroEvaluationPoint("division by zero polynomial");
  if (is_zero()) return {};
  // Shift both operands to ordinary polynomials with nonzero constant term;
  // units u^k divide anything, so only the polynomial parts matter.
  const int shift = min_exp() - b.min_exp();
  std::vector<Int> num, den;
  for (int e = min_exp(); e <= max_exp(); ++e) num.push_back(coeff(e));
  for (int e = b.min_exp(); e <= b.max_exp(); ++e) den.push_back(b.coeff(e));
  if (num.size() < den.size()) throw NotDivisible(str() + " / " + b.str());
  std::vector<Int> quot(num.size() - den.size() + 1);
  for (size_t i = quot.size(); i-- > 0;) {
    const Int& lead = num[i + den.size() - 1];
    if (lead == 0) continue;
    if (lead % den.back() != 0) throw NotDivisible(str() + " / " + b.str());
    Int q = lead / den.back();
    quot[i] = q;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= q * den[j];
  }
  for (const Int& rem : num)
    if (rem != 0) throw NotDivisible(str() + " / " + b.str());
  Laurent r;
  for (size_t i = 0; i < quot.size(); ++i)
    if (quot[i] != 0) r.c_.emplace(int(i) + shift, quot[i]);
  return r;
}

Rat Laurent::eval(const Rat& lambda) const {
  if (lambda == 0) throw ZeroEvaluationPoint("evaluation at u = 0");
  if (is_zero()) return Rat(0);
  // Horner on u^(e - min_exp), then multiply by lambda^min_exp.
  Rat acc = 0;
  for (int e = max_exp(); e >= min_exp(); --e) acc = acc * lambda + Rat(coeff(e));
  Rat unit = 1;
  int k = min_exp();
  Rat base = k >= 0 ? lambda : Rat(1) / lambda;
  for (int i = 0; i < std::abs(k); ++i) unit *= base;
  return acc * unit;
}

std::string Laurent::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const int e = it->first;
    Int c = it->second;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (c != 1 || e == 0) out << c.str();
    if (e != 0) {
      if (c != 1) out << "*";
      out << "u";
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

Laurent pow(const Laurent& a, unsigned n) {
  Laurent r = 1;
  Laurent base = a;
  while (n > 0) {
    if (n & 1u) r *= base;
    base *= base;
    n >>= 1u;
  }
  return r;
}

namespace {

// Exact rank of an integer matrix by fraction-free (Bareiss) elimination
// with full pivoting.
int rank_int(std::vector<std::vector<Int>> m) {
  const int rows = int(m.size());
  const int cols = rows ? int(m[0].size()) : 0;
  Int prev = 1;
  int r = 0;
  for (; r < std::min(rows, cols); ++r) {
    int pr = -1, pc = -1;
    for (int i = r; i < rows && pr < 0; ++i)
      for (int j = r; j < cols; ++j)
        if (m[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    std::swap(m[r], m[pr]);
    if (pc != r)
      for (int i = 0; i < rows; ++i) std::swap(m[i][r], m[i][pc]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = r + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * m[r][r] - m[i][r] * m[r][j]) / prev;
      m[i][r] = 0;
    }
    prev = m[r][r];
  }
  return r;
}

// Clear denominators row by row: multiply each row of a Laurent matrix by
// u^-min so all entries lie in Z[u].  Rank over Q(u) is unchanged.
PolyMatrix to_poly_rows(const PolyMatrix& m) {
  PolyMatrix p = m;
  for (int i = 0; i < p.rows; ++i) {
    int lo = 0;
    bool any = false;
    for (int j = 0; j < p.cols; ++j)
      if (!p.at(i, j).is_zero()) {
        lo = any ? std::min(lo, p.at(i, j).min_exp()) : p.at(i, j).min_exp();
        any = true;
      }
    if (any && lo < 0) {
      Laurent shift = Laurent::u(-lo);
      for (int j = 0; j < p.cols; ++j) p.at(i, j) *= shift;
    }
  }
  return p;
}

// Exact rank of a Z[u] matrix by Bareiss elimination in Z[u].
int rank_poly(PolyMatrix m) {
  Laurent prev = 1;
  int r = 0;
  for (; r < std::min(m.rows, m.cols); ++r) {
    int pr = -1, pc = -1;
    for (int i = r; i < m.rows && pr < 0; ++i)
      for (int j = r; j < m.cols; ++j)
        if (!m.at(i, j).is_zero()) {
          pr = i;
          pc = j;
          break;
        }
    if (pr < 0) break;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pr, j));
    if (pc != r)
      for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, r), m.at(i, pc));
    for (int i = r + 1; i < m.rows; ++i) {
      for (int j = r + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(r, r) - m.at(i, r) * m.at(r, j))
                         .divide_exact(prev);
      m.at(i, r) = {};
    }
    prev = m.at(r, r);
  }
  return r;
}

}  // namespace

int rank_rational(const std::vector<std::vector<Rat>>& m) {
  std::vector<std::vector<Int>> im(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    Int den = 1;
    for (const Rat& x : m[i]) den = lcm(den, denominator(x));
    im[i].reserve(m[i].size());
    for (const Rat& x : m[i])
      im[i].push_back(numerator(x) * (den / denominator(x)));
  }
  return rank_int(std::move(im));
}

int rank_at(const PolyMatrix& m, const Rat& lambda) {
  if (lambda == 0) throw ZeroEvaluationPoint("matrix rank at u = 0");
  std::vector<std::vector<Rat>> rm(size_t(m.rows),
                                   std::vector<Rat>(size_t(m.cols)));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) rm[size_t(i)][size_t(j)] = m.at(i, j).eval(lambda);
  return rank_rational(rm);
}

int rank(const PolyMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  // A specialization can only lose rank, so a full-rank specialization is a
  // certificate for the generic rank and avoids symbolic elimination.
  const int full = std::min(m.rows, m.cols);
  if (rank_at(m, Rat(2)) == full) return full;
  return rank_poly(to_poly_rows(m));
}

}  // namespace laurent
