#include "laurent.hpp"

#include "doctest.h"

namespace {

using laurent::Int;
using laurent::Laurent;
using laurent::PolyMatrix;
using laurent::Rat;

Laurent upow(int e) { return Laurent::u(e); }

TEST_CASE("arithmetic and canonical rendering") {
  const Laurent a = upow(2) + Laurent::term(-3, 0) + upow(-1);
  CHECK(a.str() == "u^2 - 3 + u^-1");
  CHECK((a - a).is_zero());
  CHECK(Laurent().str() == "0");
  CHECK((upow(1) + Laurent(1)).str() == "u + 1");

  const Laurent b = upow(1) - Laurent(1);
  // (u^2 - 3 + u^-1)(u - 1) = u^3 - u^2 - 3u + 4 - u^-1
  CHECK(a * b == upow(3) - upow(2) - Laurent::term(3, 1) + Laurent(4) - upow(-1));
  CHECK(pow(b, 3) == b * b * b);
  CHECK(pow(b, 0) == Laurent(1));

  CHECK(a.min_exp() == -1);
  CHECK(a.max_exp() == 2);
  CHECK(a.coeff(5) == 0);
}

TEST_CASE("ring membership predicates") {
  CHECK((upow(2) + Laurent(1)).in_z_u());
  CHECK_FALSE((upow(2) + upow(-1)).in_z_u());
  CHECK((upow(-3) + Laurent(7)).in_z_uinv());
  CHECK_FALSE((upow(1) + Laurent(1)).in_z_uinv());
  CHECK(Laurent().in_z_u());
  CHECK(Laurent().in_z_uinv());
}

TEST_CASE("bar involution u^n -> (-u)^{-n}") {
  // Single powers pick up the parity sign.
  CHECK(upow(1).bar() == Laurent::term(-1, -1));
  CHECK(upow(-1).bar() == Laurent::term(-1, 1));
  CHECK(upow(2).bar() == upow(-2));
  CHECK(Laurent(5).bar() == Laurent(5));

  const Laurent f = upow(3) - upow(1) + Laurent(2) + upow(-2);
  CHECK(f.bar().bar() == f);  // involution
  const Laurent g = upow(2) + Laurent(1);
  CHECK((f * g).bar() == f.bar() * g.bar());  // multiplicative
}

TEST_CASE("exponent reversal u -> u^-1") {
  const Laurent f = upow(3) + Laurent::term(4, 1) - Laurent(2);
  CHECK(f.invert_u() == upow(-3) + Laurent::term(4, -1) - Laurent(2));
  CHECK(f.invert_u().invert_u() == f);
}

TEST_CASE("constant term at u^-1 = 0") {
  CHECK((Laurent(1) + upow(-1)).const_term_at_u_inv_zero() == 1);
  CHECK((upow(-1) + upow(-5)).const_term_at_u_inv_zero() == 0);
  CHECK_THROWS_AS((void)(upow(1) + Laurent(1)).const_term_at_u_inv_zero(),
                  laurent::PositiveExponentPresent);
}

TEST_CASE("exact division") {
  const Laurent d = upow(1) - Laurent(1);
  const Laurent q = upow(-2) + Laurent::term(3, 0);
  CHECK((d * q).divide_exact(d) == q);
  CHECK_THROWS_AS((void)Laurent(1).divide_exact(d), laurent::NotDivisible);
  CHECK_THROWS_AS((void)(d * q + Laurent(1)).divide_exact(d),
                  laurent::NotDivisible);
  CHECK_THROWS_AS((void)d.divide_exact(Laurent()),
                  laurent::ZeroEvaluationPoint);
}

TEST_CASE("evaluation at rational points") {
  const Laurent f = upow(2) - Laurent::term(3, -1);
  CHECK(f.eval(Rat(2)) == Rat(4) - Rat(3, 2));
  CHECK(f.eval(Rat(-1)) == Rat(4));
  CHECK_THROWS_AS((void)upow(-1).eval(Rat(0)), laurent::ZeroEvaluationPoint);
}

TEST_CASE("matrix rank over the fraction field and at points") {
  // [[u-1, 0], [0, u-1]]: generic rank 2, rank 0 at u = 1.
  PolyMatrix m(2, 2);
  m.at(0, 0) = upow(1) - Laurent(1);
  m.at(1, 1) = upow(1) - Laurent(1);
  CHECK(laurent::rank(m) == 2);
  CHECK(laurent::rank_at(m, Rat(1)) == 0);
  CHECK(laurent::rank_at(m, Rat(2)) == 2);

  // Proportional rows: generic rank 1.
  PolyMatrix p(2, 3);
  p.at(0, 0) = upow(1);
  p.at(0, 1) = Laurent(1);
  p.at(0, 2) = upow(-1);
  p.at(1, 0) = upow(2);
  p.at(1, 1) = upow(1);
  p.at(1, 2) = Laurent(1);
  CHECK(laurent::rank(p) == 1);

  // Laurent entries with negative exponents are handled exactly.
  PolyMatrix q(2, 2);
  q.at(0, 0) = upow(-1);
  q.at(0, 1) = Laurent(1);
  q.at(1, 0) = Laurent(1);
  q.at(1, 1) = upow(1);
  CHECK(laurent::rank(q) == 1);  // det = 1 - 1 = 0
  q.at(1, 1) = upow(2);
  CHECK(laurent::rank(q) == 2);

  std::vector<std::vector<Rat>> r = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK(laurent::rank_rational(r) == 1);
  r[1][1] = Rat(5);
  CHECK(laurent::rank_rational(r) == 2);
}

}  // namespace
