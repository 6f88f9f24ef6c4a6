#pragma once

// The (H, H)-bimodule picture: H as a module over H (x) H via
// T_x (x) T_y : T_r -> T_x T_r T_{y^-1}, the pairings
//   p_{x,y,z}  = tau(T_x T_y T_z) u^{-2l(z)-2l(y)}   (in d + u^-1 Z[u^-1])
//   p'_{x,y,z} = tau(T_x T_y T_z) u^{-2l(x)}         (in d' + u Z[u])
// with constant terms d in {0,1}, d' in {0,+-1}, the star product y*z
// (the unique x with d_{x,y,z} = 1), and the expansion
//   mu(T_a) = sum_{x,y} N^{x,y}_a  T_x (x) T_y,
//   N^{x,y}_a = u^{-2l(x)-2l(y)} tau(T_a T_y T_{x^-1}).
//
// All functions require a complete finite table.

#include "coxeter.hpp"
#include "hecke.hpp"
#include "laurent.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bireg {

using laurent::Laurent;

// p or p' has the wrong shape (p outside d + u^-1 Z[u^-1], p' outside
// d' + u Z[u], or a constant term outside its allowed set).
struct ShapeViolation : std::runtime_error {
  explicit ShapeViolation(const std::string& w) : std::runtime_error(w) {}
};

// The scan over x did not find exactly one x with d_{x,y,z} = 1.
struct UniquenessViolation : std::runtime_error {
  explicit UniquenessViolation(const std::string& w) : std::runtime_error(w) {}
};

struct Triple {
  Laurent p, pprime;
  long d = 0, dprime = 0;  // constant terms of p, p'
};
// Validates the shapes; throws ShapeViolation otherwise.
Triple triple(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y,
              cox::ElemId z);

// y * z by the inductive rule: y * 1 = y^-1; for a left descent s of z,
// y * z = (ys) * (sz) if ys > y, else y * (sz).
cox::ElemId star_product(const cox::GroupTable& g, cox::ElemId y,
                         cox::ElemId z);

// y * z located by scanning d_{x,y,z} over all x; throws UniquenessViolation
// unless exactly one x qualifies.  Independent of star_product.
cox::ElemId star_product_scan(const cox::GroupTable& g, cox::ElemId y,
                              cox::ElemId z);

// pi(x, y) = y * (x^-1): the W-coordinate of the twisted involution of
// W x W attached to (x, y).
cox::ElemId pi(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y);

// N^{x,y}_a for one pair.
Laurent mu_coeff(const cox::GroupTable& g, cox::ElemId a, cox::ElemId x,
                 cox::ElemId y);

// All nonzero N^{x,y}_a for fixed a, ordered by (x, y).
std::vector<std::tuple<cox::ElemId, cox::ElemId, Laurent>> mu_column(
    const cox::GroupTable& g, cox::ElemId a);

// An element of H (x) H with coefficients in the T (x) T basis.
using PairElt = std::map<std::pair<cox::ElemId, cox::ElemId>, Laurent>;

// X = sum_w u^{-2l(w)} T_w (x) T_w.
PairElt biregular_X(const cox::GroupTable& g);

// Left multiplication by T_a in the first (resp. second) tensor factor.
PairElt act_first(const cox::GroupTable& g, cox::ElemId a, const PairElt& m);
PairElt act_second(const cox::GroupTable& g, cox::ElemId a, const PairElt& m);

// mu(T_z) = T_z X, expanded in the T (x) T basis.
PairElt mu_of_Tz(const cox::GroupTable& g, cox::ElemId z);

// Runs the generic one-parameter pipeline on W x W with the swap
// diagram involution and compares it against the tau-based expansion:
// for every a in W the module coefficients in the column of the twisted
// involution (a, a^-1) must equal the N^{x,y}_a, and the module's
// distinguished-column map must match pi(x, y) = y * (x^-1).  Returns
// human-readable descriptions of any mismatches (empty means agreement).
std::vector<std::string> crosscheck_generic(const cox::GroupTable& base);

// Which reading of the W-coordinate of the u = 0 map matches the generic
// module on W x W: "direct" when it is y * (x^-1) on every row, "inverse"
// when it is (y * (x^-1))^-1 instead, "ambiguous" when both readings agree
// everywhere, "neither" when no single reading matches.
std::string pi_reading(const cox::GroupTable& base);

}  // namespace bireg
