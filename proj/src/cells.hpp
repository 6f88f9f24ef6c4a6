#pragma once

// Kazhdan-Lusztig machinery for finite Coxeter groups: the canonical basis
// in the normalized T-basis (Tt_w = u^{-l(w)} T_w), structure constants h,
// the a-function, distinguished involutions, left/right/two-sided cells,
// the asymptotic ring J with basis {t_z}, the homomorphism psi into J, and
// the ideal of J acting nontrivially on the twisted-involution module.

#include "coxeter.hpp"
#include "groups.hpp"
#include "hecke.hpp"
#include "invmodule.hpp"
#include "laurent.hpp"

#include <map>
#include <string>
#include <vector>

namespace kl {

using cox::ElemId;
using laurent::Laurent;
using laurent::Rat;

// Elements of the asymptotic ring: rational or Laurent coefficients on t_z.
using JQ = std::map<ElemId, Rat>;
using JL = std::map<ElemId, Laurent>;

class KLData {
 public:
  // Canonical basis, conversions and cells for the whole group; when
  // |W| <= full_limit additionally the full h-table, a-function,
  // distinguished involutions and the asymptotic ring.
  explicit KLData(const cox::GroupTable& t, size_t limit = 1200,
                  size_t full_limit = 48);

  const cox::GroupTable& table() const { return *t_; }
  bool full() const { return full_; }
  size_t size() const { return n_; }

  // --- canonical basis ------------------------------------------------
  // c_w = sum_y p(y,w) Tt_y; p(w,w) = 1, p(y,w) in u^-1 Z[u^-1] for y != w.
  const std::map<ElemId, Laurent>& c_in_t(ElemId w) const {
    return c_[size_t(w)];
  }
  Laurent p(ElemId y, ElemId w) const;
  // u^-1 coefficient of p(y,w).
  long mu(ElemId y, ElemId w) const;
  // Tt_w = sum_y s(y,w) c_y; inverse triangular conversion.
  const std::map<ElemId, Laurent>& t_in_c(ElemId w) const {
    return s_[size_t(w)];
  }

  // --- structure constants (full mode) --------------------------------
  // c_x c_y = sum_z h(x,y,z) c_z.
  const std::map<ElemId, Laurent>& h_row(ElemId x, ElemId y) const;
  Laurent h(ElemId x, ElemId y, ElemId z) const;
  // a(z) = max degree in u of h(x,y,z) over all x, y.
  int a(ElemId z) const;
  // p(1,z) = n_z u^{-delta(z)} + lower powers.
  int delta(ElemId z) const;
  // Leading J-coefficient: gamma(x,y,z) is the u^{a(z^-1)}-coefficient of
  // h(x,y,z^-1), so that t_x t_y = sum_z gamma(x,y,z^-1) t_z.
  long gamma(ElemId x, ElemId y, ElemId z) const;
  // Distinguished involutions {z : a(z) = delta(z)}, ascending; the
  // constructor verifies there is exactly one per left cell.
  const std::vector<ElemId>& distinguished() const;
  bool is_distinguished(ElemId z) const;

  // --- cells -----------------------------------------------------------
  int num_left_cells() const { return int(left_cells_.size()); }
  const std::vector<ElemId>& left_cell(int i) const {
    return left_cells_[size_t(i)];
  }
  int left_cell_of(ElemId w) const { return left_of_[size_t(w)]; }
  int num_right_cells() const { return int(right_cells_.size()); }
  const std::vector<ElemId>& right_cell(int i) const {
    return right_cells_[size_t(i)];
  }
  int right_cell_of(ElemId w) const { return right_of_[size_t(w)]; }
  int num_two_sided_cells() const { return int(two_cells_.size()); }
  const std::vector<ElemId>& two_sided_cell(int i) const {
    return two_cells_[size_t(i)];
  }
  int two_sided_cell_of(ElemId w) const { return two_of_[size_t(w)]; }
  // The unique distinguished involution in a left cell (full mode).
  ElemId left_cell_distinguished(int i) const;

  // --- asymptotic ring (full mode) --------------------------------------
  JQ jmul(const JQ& a, const JQ& b) const;
  JL jmul(const JL& a, const JL& b) const;
  // Unit of J: sum of t_d over distinguished involutions.
  JQ junit() const;

  // psi(c_x) = sum over z of h(x, d, z) t_z with d the distinguished
  // involution of the left cell of z.
  JL psi_c(ElemId x) const;
  // psi of a general element written in the T-basis.
  JL psi(const hecke::HeckeElt& elt) const;
  // Whether the matrix of psi (c-basis to t-basis) is invertible over the
  // fraction field Q(u).
  bool psi_invertible() const;
  // Solve psi(sum_y coeff_y c_y) = target for each rational target; returns
  // the c-basis coefficients as exact fractions (numerator, denominator).
  std::vector<std::vector<std::pair<Laurent, Laurent>>> psi_solve(
      const std::vector<JQ>& targets) const;

 private:
  const cox::GroupTable* t_ = nullptr;
  size_t n_ = 0;
  bool full_ = false;
  std::vector<std::map<ElemId, Laurent>> c_, s_;
  std::vector<std::vector<std::map<ElemId, Laurent>>> h_;  // [x][y] -> row
  std::vector<int> a_, delta_;
  std::vector<ElemId> dist_;
  std::vector<std::vector<std::pair<ElemId, long>>> jrow_;  // [x*n+y]
  std::vector<std::vector<ElemId>> left_cells_, right_cells_, two_cells_;
  std::vector<int> left_of_, right_of_, two_of_;
  std::vector<ElemId> cell_dist_;  // per left cell

  void require_full() const;
  std::map<ElemId, Laurent> to_c_basis(std::map<ElemId, Laurent> e) const;
};

// ---------------------------------------------------------------------------
// Applications (all assume the table's star map is the identity)

// Expansion check for psi(X) t_xi over a left cell: the explicit
// coefficients r_z = sum_y (sum_w s(y,w)) h(y, d_Z, z) are monic of degree
// a(Z) and reproduce psi(X) t_xi exactly for every xi with xi^-1 in Z.
struct LeadingTermReport {
  bool ok = true;
  std::string detail;  // first failure, empty when ok
};
LeadingTermReport leading_term_check(const KLData& kl);

// The ideal of Q (x) J acting nontrivially on the twisted-involution module:
// central primitive idempotents e of Q (x) J, the decision h_e M != 0 made by
// solving psi(h_e) = e exactly and letting h_e act on M, and a row-echelon
// basis (t-coordinates) of the sum of the active blocks.
struct JcmResult {
  std::vector<JQ> idempotents;
  std::vector<char> acts_nonzero;        // per idempotent
  std::vector<int> block_dims;           // dim of e.J per idempotent
  std::vector<std::vector<Rat>> basis;   // echelon rows over t-coordinates
  int dim() const { return int(basis.size()); }
};
JcmResult jcm_ideal(const KLData& kl, const invmod::InvModule& m);

// Membership of a J-element in the span of the computed ideal basis.
bool jcm_contains(const JcmResult& r, const JQ& elt, size_t n);

// For the rank-2 system with bond order 6 (generators a, b): the eight
// reference elements t_e; t_a + t_ababa; t_aba; t_b + t_babab; t_bab;
// t_ab + t_abab; t_ba + t_baba; t_ababab, each checked for membership in
// the ideal, and together for linear independence and spanning.
struct ReferenceBasisReport {
  bool applicable = false;
  bool ok = false;
  std::string detail;
  std::vector<JQ> elements;
};
ReferenceBasisReport g2_reference_basis(const KLData& kl, const JcmResult& r);

// The elements sum_{z in Z meet Z'^-1} t_z for all pairs of left cells with
// nonempty intersection set.
struct CellPairElement {
  int zcell = 0;
  int zpcell = 0;
  JQ elt;
};
std::vector<CellPairElement> cell_pair_elements(const KLData& kl);

// Decomposition of the twisted-involution module at u = 1 against the
// irreducible characters of W, plus the rank of left multiplication by X.
struct MultReport {
  grp::FiniteGroup group;
  grp::CharTable chars;
  std::vector<long> mult;  // per character, canonical order
  long involution_count = 0;
  long sum_mult_dim = 0;
  int x_rank = 0;
};
MultReport kottwitz_mult_check(const cox::GroupTable& t);

}  // namespace kl
