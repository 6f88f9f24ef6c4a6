#include "coxeter.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace {

using cox::CoxeterSystem;
using cox::ElemId;
using cox::GroupTable;
using cox::StarMap;

GroupTable full(const std::string& type) {
  return GroupTable::enumerate(CoxeterSystem::from_type(type));
}

TEST_CASE("type grammar and finite enumeration counts") {
  CHECK(full("A1").size() == 2);
  CHECK(full("A2").size() == 6);
  CHECK(full("B2").size() == 8);
  CHECK(full("G2").size() == 12);
  CHECK(full("A3").size() == 24);
  CHECK(full("B3").size() == 48);
  CHECK(full("D4").size() == 192);
  CHECK(full("I2(5)").size() == 10);
  CHECK(full("I2(7)").size() == 14);
  CHECK(full("F4").size() == 1152);
  CHECK(full("A1xA1").size() == 4);
  CHECK(full("A2xA1").size() == 12);
}

TEST_CASE("identity is element 0 and enumeration is by length") {
  const GroupTable g = full("B2");
  CHECK(g.length(0) == 0);
  for (ElemId w = 1; w < g.size(); ++w)
    CHECK(g.length(w - 1) <= g.length(w));
  CHECK(g.complete());
  // Longest element of B2 has length 4.
  CHECK(g.length(g.longest()) == 4);
  CHECK(g.longest() == g.size() - 1);
}

TEST_CASE("group operations agree with word composition") {
  const GroupTable g = full("A3");
  for (ElemId a = 0; a < g.size(); ++a) {
    CHECK(g.mult(a, g.inverse(a)) == 0);
    CHECK(g.mult(0, a) == a);
    std::vector<cox::GenIdx> w = g.word(a);
    std::reverse(w.begin(), w.end());
    CHECK(g.element_by_word(w) == g.inverse(a));
  }
  // Associativity spot check on a generating sweep.
  for (ElemId a = 0; a < g.size(); a += 5)
    for (ElemId b = 0; b < g.size(); b += 7)
      for (ElemId c = 0; c < g.size(); c += 11)
        CHECK(g.mult(g.mult(a, b), c) == g.mult(a, g.mult(b, c)));
}

TEST_CASE("descents match length drop") {
  const GroupTable g = full("B2");
  for (ElemId w = 0; w < g.size(); ++w)
    for (cox::GenIdx s = 0; s < g.system().rank(); ++s) {
      CHECK(g.right_descent(w, s) ==
            (g.length(g.right(w, s)) < g.length(w)));
      CHECK(g.left_descent(s, w) == (g.length(g.left(s, w)) < g.length(w)));
    }
}

TEST_CASE("affine systems refuse full enumeration and honour bounds") {
  const CoxeterSystem aff = CoxeterSystem::from_type("A1~");
  CHECK_FALSE(aff.finite());
  CHECK_THROWS_AS((void)GroupTable::enumerate(aff),
                  cox::InfiniteGroupFullEnumeration);
  const GroupTable ball = GroupTable::enumerate(aff, 10);
  // The infinite dihedral group has exactly two elements of each length >= 1.
  CHECK(ball.size() == 21);
  CHECK_FALSE(ball.complete());
  CHECK(ball.bound() == 10);
  const GroupTable b2 = GroupTable::enumerate(CoxeterSystem::from_type("A2~"), 4);
  for (ElemId w = 0; w < b2.size(); ++w) CHECK(b2.length(w) <= 4);
}

TEST_CASE("enumeration cap throws") {
  CHECK_THROWS_AS(
      (void)GroupTable::enumerate(CoxeterSystem::from_type("A1~"), 50, 10),
      cox::LimitExceeded);
}

TEST_CASE("star maps validate against the Coxeter matrix") {
  const CoxeterSystem a3 = CoxeterSystem::from_type("A3");
  CHECK_NOTHROW((void)CoxeterSystem::from_type("A3", StarMap{{2, 1, 0}}));
  // 0 <-> 1 is not an automorphism of the A3 diagram.
  CHECK_THROWS_AS((void)CoxeterSystem::from_type("A3", StarMap{{1, 0, 2}}),
                  cox::InvalidStar);
  CHECK_THROWS_AS((void)CoxeterSystem::from_type("A3", StarMap{{0, 1}}),
                  cox::InvalidStar);
  CHECK_THROWS_AS((void)CoxeterSystem::from_type("A3", StarMap{{0, 0, 2}}),
                  cox::InvalidStar);

  const GroupTable g =
      GroupTable::enumerate(CoxeterSystem::from_type("A3", StarMap{{2, 1, 0}}));
  for (ElemId w = 0; w < g.size(); ++w) {
    // The star map is an automorphism preserving length.
    CHECK(g.length(g.star_elem(w)) == g.length(w));
    CHECK(g.star_elem(g.star_elem(w)) == w);
  }
}

TEST_CASE("invalid Coxeter matrices are rejected") {
  CHECK_THROWS_AS((void)CoxeterSystem::from_type("Q5"), cox::InvalidMatrix);
  CHECK_THROWS_AS((void)CoxeterSystem::from_type("E7"), cox::InvalidMatrix);
  CHECK_THROWS_AS((void)CoxeterSystem::from_type("I2(1)"), cox::InvalidMatrix);
  cox::CoxeterMatrix bad(2);
  bad.set(0, 1, 1);  // off-diagonal entries must be >= 2
  CHECK_THROWS_AS(bad.validate(), cox::InvalidMatrix);
}

TEST_CASE("twisted involution counts") {
  // Identity star: twisted involutions are the involutions (including 1).
  CHECK(full("A2").twisted_involutions().size() == 4);
  CHECK(full("B2").twisted_involutions().size() == 6);
  CHECK(full("G2").twisted_involutions().size() == 8);
  CHECK(full("A3").twisted_involutions().size() == 10);
  CHECK(full("B3").twisted_involutions().size() == 20);

  // Swap star on A2: x* = x^-1 exactly for {e, st, ts, sts}.
  const GroupTable g =
      GroupTable::enumerate(CoxeterSystem::from_type("A2", StarMap{{1, 0}}));
  const auto tw = g.twisted_involutions();
  for (ElemId w : tw) CHECK(g.star_elem(w) == g.inverse(w));
  CHECK(tw.size() == 4);
}

TEST_CASE("square product doubles the system") {
  const CoxeterSystem base = CoxeterSystem::from_type("A2");
  const CoxeterSystem sq = CoxeterSystem::product_square(base);
  CHECK(sq.rank() == 4);
  const GroupTable g2 = GroupTable::enumerate(sq);
  CHECK(g2.size() == 36);
  // The attached star map swaps the two factors, so twisted involutions
  // are the pairs (w, w^-1).
  CHECK(g2.twisted_involutions().size() == 6);
}

TEST_CASE("length-bounded twisted involution listing") {
  const GroupTable ball =
      GroupTable::enumerate(CoxeterSystem::from_type("A1~"), 8);
  const auto all = ball.twisted_involutions();
  const auto low = ball.twisted_involutions(4);
  CHECK(low.size() < all.size());
  for (ElemId w : low) CHECK(ball.length(w) <= 4);
}

TEST_CASE("words render with canonical letters") {
  const GroupTable g = full("A2");
  CHECK(g.word_str(0) == "e");
  std::set<std::string> words;
  for (ElemId w = 0; w < g.size(); ++w) words.insert(g.word_str(w));
  CHECK(words.count("s"));
  CHECK(words.count("t"));
  CHECK(words.count("st"));
  CHECK(words.count("ts"));
  CHECK(words.count("sts"));
}

}  // namespace
