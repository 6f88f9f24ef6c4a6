#include "groups.hpp"

#include "coxeter.hpp"
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace {

using grp::CharTable;
using grp::FiniteGroup;

std::multiset<long> degrees(const CharTable& t) {
  return {t.degree.begin(), t.degree.end()};
}

long count_order_two(const FiniteGroup& g) {
  long n = 0;
  for (int a = 0; a < g.size(); ++a)
    if (g.mult(a, a) == 0) ++n;  // includes the identity
  return n;
}

TEST_CASE("construction of the standard small groups") {
  CHECK(FiniteGroup::trivial().size() == 1);
  CHECK(FiniteGroup::cyclic(6).size() == 6);
  CHECK(FiniteGroup::symmetric(4).size() == 24);
  CHECK(FiniteGroup::dihedral(4).size() == 8);
  CHECK(FiniteGroup::quaternion8().size() == 8);
  const FiniteGroup v4 =
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(v4.size() == 4);
  CHECK(v4.exponent() == 2);
  CHECK(FiniteGroup::cyclic(12).exponent() == 12);
  CHECK(FiniteGroup::symmetric(4).exponent() == 12);
}

TEST_CASE("conjugacy classes of the symmetric group on four letters") {
  const FiniteGroup s4 = FiniteGroup::symmetric(4);
  CHECK(s4.num_classes() == 5);
  std::multiset<int> sizes;
  for (int c = 0; c < s4.num_classes(); ++c) sizes.insert(s4.class_size(c));
  CHECK(sizes == std::multiset<int>{1, 3, 6, 6, 8});
  // Class 0 is the identity class.
  CHECK(s4.class_size(0) == 1);
  CHECK(s4.class_rep(0) == 0);
}

TEST_CASE("character degrees of the standard groups") {
  CHECK(degrees(grp::character_table(FiniteGroup::symmetric(3))) ==
        std::multiset<long>{1, 1, 2});
  CHECK(degrees(grp::character_table(FiniteGroup::symmetric(4))) ==
        std::multiset<long>{1, 1, 2, 3, 3});
  CHECK(degrees(grp::character_table(FiniteGroup::dihedral(4))) ==
        std::multiset<long>{1, 1, 1, 1, 2});
  CHECK(degrees(grp::character_table(FiniteGroup::quaternion8())) ==
        std::multiset<long>{1, 1, 1, 1, 2});
  CHECK(degrees(grp::character_table(FiniteGroup::cyclic(5))) ==
        std::multiset<long>{1, 1, 1, 1, 1});
  const FiniteGroup s5 = FiniteGroup::symmetric(5);
  CHECK(degrees(grp::character_table(s5)) ==
        std::multiset<long>{1, 1, 4, 4, 5, 5, 6});
}

TEST_CASE("indicator separates the two groups of order eight") {
  const FiniteGroup d4 = FiniteGroup::dihedral(4);
  const FiniteGroup q8 = FiniteGroup::quaternion8();
  const CharTable td = grp::character_table(d4);
  const CharTable tq = grp::character_table(q8);
  for (int i = 0; i < td.num_chars(); ++i)
    CHECK(grp::frobenius_schur(d4, td, i) == 1);
  int minus = 0;
  for (int i = 0; i < tq.num_chars(); ++i) {
    const int fs = grp::frobenius_schur(q8, tq, i);
    if (tq.degree[size_t(i)] == 2) {
      CHECK(fs == -1);
      ++minus;
    } else {
      CHECK(fs == 1);
    }
  }
  CHECK(minus == 1);
}

TEST_CASE("indicator-degree sums count square roots of the identity") {
  for (const FiniteGroup& g :
       {FiniteGroup::symmetric(4), FiniteGroup::dihedral(4),
        FiniteGroup::quaternion8(), FiniteGroup::cyclic(6),
        FiniteGroup::dihedral(6)}) {
    CAPTURE(g.name());
    const CharTable t = grp::character_table(g);
    long sum = 0;
    for (int i = 0; i < t.num_chars(); ++i)
      sum += grp::frobenius_schur(g, t, i) * t.degree[size_t(i)];
    CHECK(sum == count_order_two(g));
  }
}

TEST_CASE("complex characters pair up under duality") {
  const FiniteGroup c3 = FiniteGroup::cyclic(3);
  const CharTable t = grp::character_table(c3);
  int self_dual = 0;
  for (int i = 0; i < t.num_chars(); ++i) {
    const int j = grp::dual_character(c3, t, i);
    CHECK(grp::dual_character(c3, t, j) == i);
    if (i == j) ++self_dual;
    CHECK(grp::frobenius_schur(c3, t, i) == (i == j ? 1 : 0));
  }
  CHECK(self_dual == 1);  // only the trivial character

  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const CharTable ts = grp::character_table(s3);
  for (int i = 0; i < ts.num_chars(); ++i)
    CHECK(grp::dual_character(s3, ts, i) == i);
}

TEST_CASE("restriction multiplicities") {
  const FiniteGroup s3 = FiniteGroup::symmetric(3);
  const CharTable t = grp::character_table(s3);
  // Locate a 3-cycle and a transposition by element order.
  int three = -1, two = -1;
  for (int a = 1; a < s3.size(); ++a) {
    if (s3.order(a) == 3 && three < 0) three = a;
    if (s3.order(a) == 2 && two < 0) two = a;
  }
  REQUIRE(three >= 0);
  REQUIRE(two >= 0);
  const grp::Subgroup c3 = grp::subgroup_generated(s3, {three});
  const grp::Subgroup c2 = grp::subgroup_generated(s3, {two});
  CHECK(c3.group.size() == 3);
  CHECK(c2.group.size() == 2);
  for (int i = 0; i < t.num_chars(); ++i) {
    const long on_c3 = grp::trivial_multiplicity_on(s3, t, i, c3.to_parent);
    const long on_c2 = grp::trivial_multiplicity_on(s3, t, i, c2.to_parent);
    if (t.degree[size_t(i)] == 2) {
      CHECK(on_c3 == 0);
      CHECK(on_c2 == 1);
    } else {
      // Trivial and sign characters restrict to the trivial character of
      // the cycle subgroup.
      CHECK(on_c3 == 1);
    }
  }
}

TEST_CASE("cyclotomic values recognize rationality") {
  const FiniteGroup c4 = FiniteGroup::cyclic(4);
  const CharTable t = grp::character_table(c4);
  int rational_rows = 0;
  for (int i = 0; i < t.num_chars(); ++i) {
    bool all_rational = true;
    for (int c = 0; c < c4.num_classes(); ++c)
      all_rational = all_rational && t.chi[size_t(i)][size_t(c)].is_rational();
    rational_rows += int(all_rational);
  }
  CHECK(rational_rows == 2);  // the trivial and the order-two character
}

TEST_CASE("a Coxeter table becomes an abstract group") {
  const cox::GroupTable w =
      cox::GroupTable::enumerate(cox::CoxeterSystem::from_type("A3"));
  const FiniteGroup g = FiniteGroup::from_coxeter(w);
  CHECK(g.size() == 24);
  CHECK(g.num_classes() == 5);
  CHECK(degrees(grp::character_table(g)) ==
        std::multiset<long>{1, 1, 2, 3, 3});
}

}  // namespace
