#pragma once

// The Hecke-algebra module M with basis {a_w} indexed by twisted involutions
// w (w* = w^-1), the tables L, Lbar, Ltilde and lambda attached to it, the
// statistics phi and eps on twisted involutions, and the u = 0 combinatorics
// (x, w) -> x o w with its sign.
//
// The generator action (s in S, w a twisted involution):
//   T_s a_w = u a_w + (u+1) a_{sw}               if sw = ws* > w
//   T_s a_w = (u^2-u-1) a_w + (u^2-u) a_{sw}     if sw = ws* < w
//   T_s a_w = a_{sws*}                           if sw != ws* > w
//   T_s a_w = (u^2-1) a_w + u^2 a_{sws*}         if sw != ws* < w
//
// The tables: T_x a_1 = sum_z L^x_z a_z with L^x_z in Z[u];
// Lbar is the image of L under u^n -> (-u)^{-n};
// Ltilde^x_z = (-1)^{l(x)} eps(z) Lbar^x_z (in Z[u^-1]);
// lambda^x_z = Ltilde^x_z / (u-1)^{phi(z)}.
//
// On a ball of radius 2b, every quantity attached to |x| <= b is computable;
// operations that would need elements outside the ball throw
// cox::BallExceeded.

#include "coxeter.hpp"
#include "laurent.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace invmod {

using laurent::Laurent;

// A table entry left its required ring (L outside Z[u] or tilde-L outside
// Z[u^-1]); every valid table satisfies both, so this is fatal.
struct IntegralityViolation : std::runtime_error {
  explicit IntegralityViolation(const std::string& w) : std::runtime_error(w) {}
};

// A row's constant-term profile at u^-1 = 0 is not "exactly one 1, rest 0".
struct PiViolation : std::runtime_error {
  explicit PiViolation(const std::string& w) : std::runtime_error(w) {}
};

// How s interacts with the twisted involution w, together with the partner
// element: sw (equal to ws*) for the commuting cases, sws* otherwise.
enum class GenCase {
  kCommuteUp,    // sw = ws* > w
  kCommuteDown,  // sw = ws* < w
  kTwistUp,      // sw != ws* > w
  kTwistDown,    // sw != ws* < w
};
struct GenStep {
  GenCase kind;
  cox::ElemId partner;  // sw or sws*, a twisted involution
};
GenStep classify(const cox::GroupTable& g, cox::GenIdx s, cox::ElemId w);

// Combination sum_w c_w a_w, keyed by group element id (all in I_*).
using Elt = std::map<cox::ElemId, Laurent>;

// All tables for x in the ball with l(x) <= the requested bound.
struct ModuleTables {
  std::vector<cox::ElemId> xs;  // row order: ids ascending
  std::vector<cox::ElemId> zs;  // column order: ids ascending (I_* in ball)
  std::vector<int> xpos, zpos;  // id -> row/column, -1 when absent

  laurent::PolyMatrix L;       // Z[u]
  laurent::PolyMatrix barL;    // image of L under u^n -> (-u)^{-n}
  laurent::PolyMatrix tildeL;  // Z[u^-1]; column z of tildeL is mu(a_z)
  laurent::PolyMatrix lambda;  // tildeL / (u-1)^{phi(z)}

  std::vector<cox::ElemId> pi;  // per row: x o 1
  std::vector<int> pi_sign;     // per row: the sign in Tbar_x abar_1

  int row(cox::ElemId x) const { return xpos[size_t(x)]; }
  int col(cox::ElemId z) const { return zpos[size_t(z)]; }
};

class InvModule {
 public:
  explicit InvModule(const cox::GroupTable& g);

  const cox::GroupTable& table() const { return *g_; }
  const std::vector<cox::ElemId>& involutions() const { return elems_; }
  bool contains(cox::ElemId w) const {
    return w < pos_.size() && pos_[size_t(w)] >= 0;
  }

  // phi and eps = (-1)^{(l+phi)/2} on twisted involutions of the ball.
  int phi(cox::ElemId z) const { return phi_[size_t(pos_at(z))]; }
  int eps(cox::ElemId z) const { return eps_[size_t(pos_at(z))]; }

  // T_s m and T_x m.
  Elt act_gen(cox::GenIdx s, const Elt& m) const;
  Elt act(cox::ElemId x, const Elt& m) const;

  // u = 0 composition: Tbar_x abar_w = sign * abar_{x o w}.
  std::pair<cox::ElemId, int> circ(cox::ElemId x, cox::ElemId w) const;

  // Tables for all rows x with l(x) <= x_length_bound (< 0: every x in the
  // ball).  On bounded balls callers should keep 2 * x_length_bound within
  // the ball radius.
  ModuleTables tables(int x_length_bound = -1) const;

 private:
  int pos_at(cox::ElemId z) const;

  const cox::GroupTable* g_;
  std::vector<cox::ElemId> elems_;  // I_* in id order
  std::vector<int> pos_;            // element id -> index in elems_, or -1
  std::vector<int> phi_, eps_;      // per index in elems_
};

// For each row x the unique column z whose tilde-L entry has constant term 1
// at u^-1 = 0 (all other entries must have constant term 0); throws
// PiViolation otherwise.  Cross-checks against ModuleTables::pi pin down the
// two independent routes to the same map.
std::vector<cox::ElemId> pi_from_tilde(const ModuleTables& t);

// Exhaustive check of the eight length-recursion identities in their plain,
// barred and renormalized forms over all (x, z, s) covered by the table;
// instances needing elements outside the ball are skipped.  Returns
// violation descriptions; empty means every applicable instance holds.
// The ranged forms restrict to rows [row_begin, row_end) of t.xs (resp. the
// involution list) so callers can shard the work across threads.
std::vector<std::string> validate_recursions(const InvModule& m,
                                             const ModuleTables& t,
                                             size_t row_begin, size_t row_end);
inline std::vector<std::string> validate_recursions(const InvModule& m,
                                                    const ModuleTables& t) {
  return validate_recursions(m, t, 0, t.xs.size());
}

// The four recursions of the divided table (rows with a left descent s).
std::vector<std::string> validate_lambda_recursions(const InvModule& m,
                                                    const ModuleTables& t,
                                                    size_t row_begin,
                                                    size_t row_end);
inline std::vector<std::string> validate_lambda_recursions(
    const InvModule& m, const ModuleTables& t) {
  return validate_lambda_recursions(m, t, 0, t.xs.size());
}

// bar(lambda^x_z) = (-u^2)^{l(x) - (l(z) - phi(z))/2} lambda^x_z on every
// table entry.
std::vector<std::string> lambda_bar_symmetry_violations(const InvModule& m,
                                                        const ModuleTables& t);

// The four identities making z -> eps(z) a homomorphism to the sign
// representation.
std::vector<std::string> sign_identity_violations(const InvModule& m,
                                                  size_t begin, size_t end);
inline std::vector<std::string> sign_identity_violations(const InvModule& m) {
  return sign_identity_violations(m, 0, m.involutions().size());
}

}  // namespace invmod
