#pragma once

// Deterministic report assembly for the command-line tool: every function
// returns an ordered JSON document whose key order, element order and
// polynomial rendering are canonical, so identical inputs always produce
// byte-identical output.

#include "coxeter.hpp"
#include "groups.hpp"

#include "json.hpp"

#include <string>

namespace report {

using json = nlohmann::ordered_json;

// Star permutation rendered as "0,1,2".
std::string star_string(const cox::StarMap& star);

// The full verification suite on one system: integrality, the u = 0 map,
// length recursions (three forms), the divided table, sign identities and
// independence ranks.  j["ok"] is true exactly when no check failed;
// x_length_bound < 0 covers every row of the ball, threads bounds worker
// parallelism for the recursion sweeps.
json verify_report(const cox::GroupTable& g, int x_length_bound, int threads);

// {type, star, bound, rows, pi} dump of the module tables.
json mu_table_report(const cox::GroupTable& g, int x_length_bound);

// The trace-form picture on a finite group: X, the expansions mu(T_a), the
// star-product table, the empirical reading of the u = 0 map, and the
// crosscheck against the generic pipeline (groups of size <= 24).
json biregular_report(const cox::GroupTable& g);

// emit is one of "kl", "cells", "jring", "jcm".
json cells_report(const cox::GroupTable& g, const std::string& emit);

// check is one of "prop32", "chi", "fourier".
json group_ktheory_report(const grp::FiniteGroup& g, const std::string& check);

// Flat TSV rendering of a report (sections for arrays of objects, dotted
// keys for nested objects, comma-joined scalar arrays).
std::string to_tsv(const json& j);

// Final serialized artifact: format is "json" (2-space indent) or "tsv";
// always ends with a newline.
std::string to_text(const json& j, const std::string& format);

}  // namespace report
