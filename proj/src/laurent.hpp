#pragma once

// Exact arithmetic in the ring Z[u,u^-1] of integral Laurent polynomials,
// plus rank computations for matrices over its fraction field.
//
// Coefficients are arbitrary-precision integers, so no overflow is possible
// anywhere downstream.  A Laurent value is stored as a map from exponent to
// nonzero coefficient; the zero polynomial is the empty map.  All operations
// are deterministic and the text rendering is canonical: terms are printed
// with strictly descending exponents, as in "u^2 - u - 1".

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace laurent {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Requested a constant term at u^-1 = 0 from a value outside Z[u^-1].
struct PositiveExponentPresent : std::runtime_error {
  explicit PositiveExponentPresent(const std::string& what)
      : std::runtime_error(what) {}
};

// Exact division was requested but the quotient does not lie in Z[u,u^-1].
struct NotDivisible : std::runtime_error {
  explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

// Division by the zero polynomial, or evaluation at lambda = 0 (which is not
// a point of the Laurent ring).
struct ZeroEvaluationPoint : std::runtime_error {
  explicit ZeroEvaluationPoint(const std::string& what)
      : std::runtime_error(what) {}
};

class Laurent {
 public:
  Laurent() = default;
  Laurent(long v) { set_term(0, Int(v)); }  // NOLINT: implicit by design
  explicit Laurent(const Int& v) { set_term(0, v); }

  // The monomial c * u^e.
  static Laurent term(const Int& c, int e) {
    Laurent r;
    r.set_term(e, c);
    return r;
  }
  static Laurent u(int e = 1) { return term(1, e); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && coeff(0) == 1; }

  // exponent -> coefficient, every stored coefficient nonzero.
  const std::map<int, Int>& terms() const { return c_; }

  Int coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Int(0) : it->second;
  }

  // Lowest / highest exponent; only meaningful on nonzero values.
  int min_exp() const { return c_.begin()->first; }
  int max_exp() const { return c_.rbegin()->first; }

  bool in_z_u() const { return c_.empty() || min_exp() >= 0; }
  bool in_z_uinv() const { return c_.empty() || max_exp() <= 0; }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.c_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.c_) add_term(e, -c);
    return *this;
  }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator-(const Laurent& a) {
    Laurent r;
    for (const auto& [e, c] : a.c_) r.c_.emplace(e, -c);
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Laurent& a, const Laurent& b) {
    return !(a == b);
  }
  // Lexicographic on the term map; used only to key ordered containers.
  friend bool operator<(const Laurent& a, const Laurent& b) {
    return a.c_ < b.c_;
  }

  // The ring involution with u^n -> (-u)^-n = (-1)^n u^-n.
  Laurent bar() const;
  // The ring involution with u^n -> u^-n.
  Laurent invert_u() const;

  // Value at u^-1 = 0 of an element of Z[u^-1], i.e. its u^0 coefficient.
  Int const_term_at_u_inv_zero() const;

  // Exact quotient *this / b in Z[u,u^-1]; throws NotDivisible otherwise.
  Laurent divide_exact(const Laurent& b) const;

  // Evaluation at a nonzero rational point.
  Rat eval(const Rat& lambda) const;

  // Canonical rendering, e.g. "u^2 - u - 1", "1 - u^-1", "0".
  std::string str() const;

  // Scaling by an integer.
  friend Laurent operator*(const Int& k, const Laurent& a) {
    Laurent r;
    if (k == 0) return r;
    for (const auto& [e, c] : a.c_) r.c_.emplace(e, k * c);
    return r;
  }

  void add_term(int e, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = c_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

 private:
  void set_term(int e, const Int& c) {
    if (c != 0) c_[e] = c;
  }

  std::map<int, Int> c_;
};

Laurent pow(const Laurent& a, unsigned n);

// Dense matrix over Z[u,u^-1] (row-major).
struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Laurent> a;

  PolyMatrix() = default;
  PolyMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
  Laurent& at(int r, int c) { return a[size_t(r) * cols + c]; }
  const Laurent& at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

// Rank of m over the fraction field Q(u).  Exact: a full-rank specialization
// certifies the generic rank; otherwise fraction-free (Bareiss) elimination
// over Z[u] decides it symbolically.
int rank(const PolyMatrix& m);

// Rank of the rational matrix m(lambda); lambda must be nonzero.
int rank_at(const PolyMatrix& m, const Rat& lambda);

// Exact rank of a rational matrix (fraction-free integer elimination).
int rank_rational(const std::vector<std::vector<Rat>>& m);

}  // namespace laurent
