#pragma once

// Finite groups given by multiplication tables, their conjugacy structure,
// and exact character tables.
//
// Character values live in the cyclotomic field Q(zeta_N), N the group
// exponent, represented as polynomials modulo the N-th cyclotomic polynomial
// with rational coefficients.  Tables are computed by the modular
// (Dixon-Schneider) method and then validated exactly: lifted values must
// satisfy the first orthogonality relations over Q(zeta_N), so no
// approximation can survive into results.

#include "laurent.hpp"  // for laurent::Int / laurent::Rat

#include <map>
#include <string>
#include <vector>

namespace grp {

using laurent::Int;
using laurent::Rat;

// ---------------------------------------------------------------------------
// Exact cyclotomics

// Q(zeta_n) = Q[x] / Phi_n(x).
class CycField {
 public:
  explicit CycField(int n);
  int n() const { return n_; }
  int degree() const { return int(phi_.size()) - 1; }
  const std::vector<Int>& modulus() const { return phi_; }  // monic Phi_n

 private:
  int n_ = 1;
  std::vector<Int> phi_;  // coefficients, low to high
};

// An element of Q(zeta_n): polynomial in zeta of degree < deg Phi_n.
class Cyc {
 public:
  Cyc() = default;  // zero of an unspecified field (usable as 0 everywhere)
  Cyc(const CycField& f, const Rat& r);
  // zeta_n^k.
  static Cyc root_power(const CycField& f, long k);

  int n() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational() const;  // throws std::logic_error when not rational

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator-(const Cyc& a);
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  friend Cyc operator*(const Rat& r, Cyc a);
  Cyc inverse() const;  // throws std::domain_error on zero

  // Galois substitution zeta -> zeta^k (k coprime to n); k = n-1 is complex
  // conjugation.
  Cyc galois(const CycField& f, long k) const;
  Cyc conj(const CycField& f) const { return galois(f, f.n() - 1); }

  // Reinterpret in Q(zeta_m) for a multiple m of n (zeta_n = zeta_m^{m/n}).
  Cyc lift(const CycField& to) const;

  friend bool operator==(const Cyc&, const Cyc&) = default;
  // Lexicographic on (n, coefficients); used for canonical ordering only.
  friend bool operator<(const Cyc& a, const Cyc& b);

  std::string str() const;  // e.g. "1/2 + z^3", zero is "0"

 private:
  int n_ = 1;
  std::vector<Rat> c_;  // low to high, reduced mod Phi_n, trailing zeros kept
  void reduce(const std::vector<Int>& phi);
  friend class CycField;
};

// ---------------------------------------------------------------------------
// Groups

// Finite group on elements {0, ..., n-1} with 0 the identity.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                std::string name);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);   // n <= 6
  static FiniteGroup dihedral(int n);    // order 2n, n >= 1
  static FiniteGroup quaternion8();
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  // A finite Coxeter group as an abstract group (complete tables only).
  template <typename GroupTableLike>
  static FiniteGroup from_coxeter(const GroupTableLike& t) {
    const int n = int(t.size());
    std::vector<std::vector<int>> m(static_cast<size_t>(n), std::vector<int>(size_t(n)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        m[size_t(a)][size_t(b)] = int(t.mult(unsigned(a), unsigned(b)));
    return from_table(std::move(m), t.system().description());
  }

  const std::string& name() const { return name_; }
  int size() const { return n_; }
  int mult(int a, int b) const { return table_[size_t(a)][size_t(b)]; }
  int inverse(int a) const { return inv_[size_t(a)]; }
  int order(int a) const;
  int exponent() const;

  // Conjugacy classes ordered by least member; class 0 = {identity}.
  int num_classes() const { return int(class_rep_.size()); }
  int class_of(int a) const { return class_of_[size_t(a)]; }
  int class_rep(int c) const { return class_rep_[size_t(c)]; }
  int class_size(int c) const { return class_size_[size_t(c)]; }
  const std::vector<int>& class_members(int c) const {
    return class_members_[size_t(c)];
  }

  std::vector<int> centralizer(int a) const;
  // Elements commuting with both a and b.
  std::vector<int> centralizer2(int a, int b) const;
  // {s : s^2 = a}.
  std::vector<int> square_roots(int a) const;
  // All commuting pairs (g, h), g and h over the whole group, ordered.
  std::vector<std::pair<int, int>> commuting_pairs() const;

 private:
  FiniteGroup() = default;
  void finish();  // inverses, classes; validates the table

  std::string name_;
  int n_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> class_of_, class_rep_, class_size_;
  std::vector<std::vector<int>> class_members_;
};

// Subgroup with its own ids (0 = identity) plus the embedding.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> to_parent;    // subgroup id -> parent id
  std::vector<int> from_parent;  // parent id -> subgroup id, -1 outside
};
// Closure of the given parent elements under multiplication.
Subgroup subgroup_generated(const FiniteGroup& g, std::vector<int> gens);

// ---------------------------------------------------------------------------
// Character tables

struct CharTable {
  CycField field;                     // Q(zeta_exponent)
  std::vector<std::vector<Cyc>> chi;  // chi[i][c]: character i on class c
  std::vector<long> degree;           // chi[i][0], a positive integer

  // Value on a group element.
  const Cyc& value(int i, const FiniteGroup& g, int elem) const {
    return chi[size_t(i)][size_t(g.class_of(elem))];
  }
  int num_chars() const { return int(chi.size()); }
};

// Exact character table; throws std::logic_error if the lifted table fails
// the orthogonality validation.
CharTable character_table(const FiniteGroup& g);

// Frobenius-Schur indicator |G|^-1 sum_g chi(g^2); always -1, 0 or 1.
int frobenius_schur(const FiniteGroup& g, const CharTable& t, int i);

// Index of the dual character (g -> chi(g^-1)).
int dual_character(const FiniteGroup& g, const CharTable& t, int i);

// Multiplicity of the trivial representation in chi_i restricted to the
// subset elems (which must be a subgroup's element set): |H|^-1 sum chi(h).
// Throws std::logic_error if the result is not a nonnegative integer.
long trivial_multiplicity_on(const FiniteGroup& g, const CharTable& t, int i,
                             const std::vector<int>& elems);

}  // namespace grp
