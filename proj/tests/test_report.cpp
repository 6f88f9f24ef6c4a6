#include "report.hpp"

#include "coxeter.hpp"
#include "doctest.h"

#include <set>
#include <string>
#include <vector>

namespace {

using cox::CoxeterSystem;
using cox::GroupTable;
using report::json;

GroupTable full(const std::string& type) {
  return GroupTable::enumerate(CoxeterSystem::from_type(type));
}

TEST_CASE("star permutation rendering") {
  const cox::StarMap id3{{0, 1, 2}};
  CHECK(report::star_string(id3) == "0,1,2");
  const cox::StarMap swap2{{1, 0}};
  CHECK(report::star_string(swap2) == "1,0");
}

TEST_CASE("verification report: clean pass with the full set of checks") {
  const GroupTable g = full("A2");
  const json j = report::verify_report(g, -1, 1);
  CHECK(j.at("ok") == true);
  CHECK(j.at("type") == "A2");
  CHECK(j.at("complete") == true);
  CHECK(j.at("ball_size") == 6);
  REQUIRE(j.at("twisted_involutions").is_array());
  CHECK(j.at("twisted_involutions").size() == 4);
  REQUIRE(j.at("checks").is_array());
  CHECK(j.at("checks").size() == 14);
  std::set<std::string> names;
  for (const auto& c : j.at("checks")) {
    REQUIRE(c.contains("name"));
    REQUIRE(c.contains("status"));
    const std::string st = c.at("status");
    CHECK((st == "pass" || st == "info"));
    names.insert(c.at("name").get<std::string>());
  }
  CHECK(names.size() == 14);  // all names distinct
  CHECK(names.count("table-integrality"));
  CHECK(names.count("divided-table-symmetry"));
  CHECK(names.count("independence-rank"));
  CHECK(names.count("singular-points"));
}

TEST_CASE("verification report is deterministic") {
  const GroupTable g = full("B2");
  const json a = report::verify_report(g, -1, 2);
  const json b = report::verify_report(g, -1, 2);
  CHECK(report::to_text(a, "json") == report::to_text(b, "json"));
  CHECK(report::to_text(a, "tsv") == report::to_text(b, "tsv"));
}

TEST_CASE("module table report shape") {
  const GroupTable g = full("A2");
  const json j = report::mu_table_report(g, -1);
  CHECK(j.at("schema") == "invhecke/table-mu/1");
  CHECK(j.at("type") == "A2");
  REQUIRE(j.at("rows").is_array());
  CHECK(j.at("rows").size() == 15);  // nonzero cells of the 6 x 4 table
  std::string lambda_longest;
  for (const auto& row : j.at("rows")) {
    for (const char* key : {"x", "z", "L", "tildeL", "lambda"})
      REQUIRE(row.contains(key));
    if (row.at("x") == "sts" && row.at("z") == "sts")
      lambda_longest = row.at("lambda").get<std::string>();
  }
  CHECK(lambda_longest == "u^-1 + u^-2 - u^-3");
  REQUIRE(j.at("pi").is_array());
  REQUIRE(j.at("pi").size() == 6);
  CHECK(j.at("pi")[3].at("x") == "st");
  CHECK(j.at("pi")[3].at("pi_x") == "sts");
}

TEST_CASE("serialized artifacts end with a newline and re-parse") {
  const GroupTable g = full("A2");
  const json j = report::mu_table_report(g, 1);
  const std::string out = report::to_text(j, "json");
  REQUIRE_FALSE(out.empty());
  CHECK(out.back() == '\n');
  CHECK(json::parse(out) == j);

  const std::string tsv = report::to_text(j, "tsv");
  REQUIRE_FALSE(tsv.empty());
  CHECK(tsv.back() == '\n');
  // Every TSV line has a constant number of tabs within its section header.
  CHECK(tsv.find('\t') != std::string::npos);
}

TEST_CASE("group report determinism") {
  const grp::FiniteGroup s3 = grp::FiniteGroup::symmetric(3);
  const json a = report::group_ktheory_report(s3, "prop32");
  const json b = report::group_ktheory_report(s3, "prop32");
  CHECK(a == b);
  CHECK(a.at("ok") == true);
}

}  // namespace
