#include "hecke.hpp"

#include "coxeter.hpp"
#include "doctest.h"
#include "laurent.hpp"

namespace {

using cox::CoxeterSystem;
using cox::ElemId;
using cox::GroupTable;
using hecke::HeckeElt;
using laurent::Laurent;

GroupTable full(const std::string& type) {
  return GroupTable::enumerate(CoxeterSystem::from_type(type));
}

const Laurent u2 = Laurent::u(2);

TEST_CASE("quadratic relation T_s^2 = (u^2 - 1) T_s + u^2") {
  const GroupTable g = full("B2");
  for (cox::GenIdx s = 0; s < g.system().rank(); ++s) {
    const ElemId es = g.right(0, s);
    const HeckeElt ts = HeckeElt::t(es);
    const HeckeElt sq = hecke::mul(g, ts, ts);
    HeckeElt expect = (u2 - Laurent(1)) * HeckeElt::t(es);
    expect += u2 * HeckeElt::t(0);
    CHECK(sq == expect);
  }
}

TEST_CASE("products follow reduced words") {
  const GroupTable g = full("A3");
  // T_a T_b = T_{ab} whenever l(ab) = l(a) + l(b).
  for (ElemId a = 0; a < g.size(); ++a)
    for (ElemId b = 0; b < g.size(); ++b) {
      const ElemId ab = g.mult(a, b);
      if (g.length(ab) != g.length(a) + g.length(b)) continue;
      CHECK(hecke::mul(g, HeckeElt::t(a), HeckeElt::t(b)) == HeckeElt::t(ab));
    }
}

TEST_CASE("multiplication is associative") {
  const GroupTable g = full("B2");
  for (ElemId a = 0; a < g.size(); a += 2)
    for (ElemId b = 1; b < g.size(); b += 3)
      for (ElemId c = 0; c < g.size(); c += 3) {
        const HeckeElt ta = HeckeElt::t(a), tb = HeckeElt::t(b),
                       tc = HeckeElt::t(c);
        CHECK(hecke::mul(g, hecke::mul(g, ta, tb), tc) ==
              hecke::mul(g, ta, hecke::mul(g, tb, tc)));
      }
}

TEST_CASE("trace form is the T_1 coefficient and is symmetrizing") {
  const GroupTable g = full("A2");
  // tau(T_x T_y) = u^{2 l(x)} when y = x^-1, else 0.
  for (ElemId x = 0; x < g.size(); ++x)
    for (ElemId y = 0; y < g.size(); ++y) {
      const Laurent v =
          hecke::tau(hecke::mul(g, HeckeElt::t(x), HeckeElt::t(y)));
      if (y == g.inverse(x))
        CHECK(v == Laurent::u(2 * g.length(x)));
      else
        CHECK(v.is_zero());
    }
}

TEST_CASE("triple traces: inversion and cyclic symmetry") {
  const GroupTable g = full("A2");
  for (ElemId x = 0; x < g.size(); ++x)
    for (ElemId y = 0; y < g.size(); ++y)
      for (ElemId z = 0; z < g.size(); ++z) {
        const Laurent a = hecke::tau_triple(g, x, y, z);
        CHECK(a == hecke::tau_triple(g, g.inverse(y), g.inverse(x),
                                     g.inverse(z)));
        CHECK(a == hecke::tau_triple(g, y, z, x));
      }
}

TEST_CASE("triple trace matches the direct product expansion") {
  const GroupTable g = full("B2");
  for (ElemId x = 0; x < g.size(); ++x)
    for (ElemId y = 0; y < g.size(); ++y) {
      const HeckeElt prod = hecke::mul(g, HeckeElt::t(x), HeckeElt::t(y));
      // T_x T_y = sum_z tau(T_x T_y T_z) u^{-2 l(z)} T_{z^-1}
      HeckeElt rebuilt;
      for (ElemId z = 0; z < g.size(); ++z) {
        const Laurent c =
            hecke::tau_triple(g, x, y, z) * Laurent::u(-2 * g.length(z));
        if (!c.is_zero()) rebuilt.add_term(g.inverse(z), c);
      }
      CHECK(rebuilt == prod);
    }
}

TEST_CASE("antiautomorphism reverses products") {
  const GroupTable g = full("B2");
  for (ElemId a = 0; a < g.size(); ++a) {
    CHECK(hecke::antiauto(g, HeckeElt::t(a)) == HeckeElt::t(g.inverse(a)));
    for (ElemId b = 0; b < g.size(); b += 3) {
      const HeckeElt lhs = hecke::antiauto(
          g, hecke::mul(g, HeckeElt::t(a), HeckeElt::t(b)));
      const HeckeElt rhs =
          hecke::mul(g, hecke::antiauto(g, HeckeElt::t(b)),
                     hecke::antiauto(g, HeckeElt::t(a)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("bar involution is a ring involution fixing T_1") {
  const GroupTable g = full("A2");
  CHECK(hecke::bar(g, HeckeElt::t(0)) == HeckeElt::t(0));
  for (ElemId a = 0; a < g.size(); ++a) {
    const HeckeElt ta = HeckeElt::t(a);
    CHECK(hecke::bar(g, hecke::bar(g, ta)) == ta);
    for (ElemId b = 0; b < g.size(); ++b) {
      const HeckeElt lhs =
          hecke::bar(g, hecke::mul(g, ta, HeckeElt::t(b)));
      const HeckeElt rhs = hecke::mul(g, hecke::bar(g, ta),
                                      hecke::bar(g, HeckeElt::t(b)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("star-fixed sum collects u^{-l(x)} over star-fixed elements") {
  const GroupTable g = full("A2");
  const HeckeElt x = hecke::star_fixed_sum(g);
  // Identity star: every element is star-fixed.
  CHECK(x.terms().size() == g.size());
  for (const auto& [w, c] : x.terms()) CHECK(c == Laurent::u(-g.length(w)));

  const GroupTable gs = GroupTable::enumerate(
      CoxeterSystem::from_type("A2", cox::StarMap{{1, 0}}));
  const HeckeElt xs = hecke::star_fixed_sum(gs);
  // Swap star: only e and the longest element are fixed.
  CHECK(xs.terms().size() == 2);
}

TEST_CASE("left multiplication matrix is the regular representation") {
  const GroupTable g = full("A2");
  const HeckeElt x = hecke::star_fixed_sum(g);
  const laurent::PolyMatrix m = hecke::left_mult_matrix(g, x);
  CHECK(m.rows == int(g.size()));
  CHECK(m.cols == int(g.size()));
  // Column of T_1: X itself.
  for (ElemId w = 0; w < g.size(); ++w)
    CHECK(m.at(int(w), 0) == Laurent::u(-g.length(w)));
  // Multiplicativity against a direct product.
  const HeckeElt xt = hecke::mul(g, x, HeckeElt::t(3));
  for (ElemId w = 0; w < g.size(); ++w)
    CHECK(m.at(int(w), 3) == xt.coeff(w));
}

}  // namespace
