#include "report.hpp"

#include "biregular.hpp"
#include "cells.hpp"
#include "hecke.hpp"
#include "invmodule.hpp"
#include "ktheory.hpp"
#include "laurent.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

namespace report {

namespace {

using laurent::Laurent;
using laurent::Rat;

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

json check_entry(const std::string& name, bool pass,
                 const std::string& detail) {
  json c;
  c["name"] = name;
  c["status"] = pass ? "pass" : "fail";
  c["detail"] = detail;
  return c;
}

json info_entry(const std::string& name, const std::string& detail) {
  json c;
  c["name"] = name;
  c["status"] = "info";
  c["detail"] = detail;
  return c;
}

std::string violation_summary(const std::vector<std::string>& v) {
  if (v.empty()) return "0 violations";
  return std::to_string(v.size()) + " violation" + (v.size() == 1 ? "" : "s") +
         "; first: " + v.front();
}

// Runs fn over [0, n) in up to `threads` contiguous chunks and concatenates
// the results in chunk order, so the output is independent of scheduling.
std::vector<std::string> sharded(
    size_t n, int threads,
    const std::function<std::vector<std::string>(size_t, size_t)>& fn) {
  if (threads <= 1 || n < 2) return fn(0, n);
  const size_t parts = std::min(size_t(threads), n);
  std::vector<std::vector<std::string>> out(parts);
  std::vector<std::exception_ptr> errs(parts);
  std::vector<std::thread> pool;
  for (size_t p = 0; p < parts; ++p) {
    const size_t b = n * p / parts;
    const size_t e = n * (p + 1) / parts;
    pool.emplace_back([&, p, b, e] {
      try {
        out[p] = fn(b, e);
      } catch (...) {
        errs[p] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errs)
    if (err) std::rethrow_exception(err);
  std::vector<std::string> all;
  for (auto& part : out) all.insert(all.end(), part.begin(), part.end());
  return all;
}

json header(const std::string& schema, const cox::GroupTable& g) {
  json j;
  j["schema"] = schema;
  j["type"] = g.system().description();
  j["star"] = star_string(g.system().star());
  if (g.bound())
    j["bound"] = *g.bound();
  else
    j["bound"] = nullptr;
  return j;
}

}  // namespace

std::string star_string(const cox::StarMap& star) {
  std::string s;
  for (size_t i = 0; i < star.perm.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(star.perm[i]);
  }
  return s;
}

json verify_report(const cox::GroupTable& g, int x_length_bound, int threads) {
  json j = header("invhecke/verify/1", g);
  j["complete"] = g.complete();
  j["ball_size"] = g.size();

  const invmod::InvModule m(g);
  json tw = json::array();
  for (cox::ElemId z : m.involutions()) tw.push_back(g.word_str(z));
  j["twisted_involutions"] = tw;

  json checks = json::array();
  bool ok = true;
  auto add = [&](const std::string& name, bool pass,
                 const std::string& detail) {
    checks.push_back(check_entry(name, pass, detail));
    ok = ok && pass;
  };

  invmod::ModuleTables t;
  bool have_tables = false;
  try {
    t = m.tables(x_length_bound);
    have_tables = true;
  } catch (const invmod::IntegralityViolation& e) {
    add("table-integrality", false, e.what());
  } catch (const laurent::NotDivisible& e) {
    add("divided-table-exactness", false, e.what());
  }

  if (have_tables) {
    const std::string dims = std::to_string(t.xs.size()) + " rows x " +
                             std::to_string(t.zs.size()) + " columns";
    add("table-integrality", true,
        dims + ": L in Z[u], tilde-L in Z[u^-1], constant terms in {0,1}");
    add("divided-table-exactness", true,
        "every tilde-L entry is divisible by (u-1)^phi(z)");

    std::vector<cox::ElemId> pi2;
    bool unique = true;
    try {
      pi2 = invmod::pi_from_tilde(t);
      add("u0-map-uniqueness", true,
          "each row has exactly one unit constant term at u^-1 = 0");
    } catch (const invmod::PiViolation& e) {
      unique = false;
      add("u0-map-uniqueness", false, e.what());
    }
    if (unique) {
      add("u0-route-agreement", pi2 == t.pi,
          pi2 == t.pi ? "constant-term route matches the composition route"
                      : "constant-term route disagrees with the composition "
                        "route");
    }

    bool signs_ok = true;
    for (size_t row = 0; row < t.xs.size() && signs_ok; ++row) {
      const int expect =
          (g.length(t.xs[row]) % 2 == 0 ? 1 : -1) * m.eps(t.pi[row]);
      signs_ok = t.pi_sign[row] == expect;
    }
    add("u0-sign-identity", signs_ok,
        signs_ok ? "sign of the u = 0 image is (-1)^l(x) eps(pi(x))"
                 : "a u = 0 sign disagrees with (-1)^l(x) eps(pi(x))");

    std::vector<char> hit(g.size(), 0);
    for (cox::ElemId p : t.pi) hit[p] = 1;
    const int maxlen = t.xs.empty() ? 0 : g.length(t.xs.back());
    size_t expected = 0, covered = 0;
    for (cox::ElemId z : t.zs) {
      if (!g.complete() && g.length(z) > maxlen) continue;
      ++expected;
      if (hit[z]) ++covered;
    }
    add("u0-map-surjective", covered == expected,
        "image covers " + std::to_string(covered) + " of " +
            std::to_string(expected) + " twisted involutions" +
            (g.complete() ? "" :
             " of length <= " + std::to_string(maxlen)));

    const auto rec = sharded(t.xs.size(), threads, [&](size_t b, size_t e) {
      return invmod::validate_recursions(m, t, b, e);
    });
    add("length-recursions", rec.empty(), violation_summary(rec));

    const auto lrec = sharded(t.xs.size(), threads, [&](size_t b, size_t e) {
      return invmod::validate_lambda_recursions(m, t, b, e);
    });
    add("divided-table-recursions", lrec.empty(), violation_summary(lrec));

    const auto sym = invmod::lambda_bar_symmetry_violations(m, t);
    add("divided-table-symmetry", sym.empty(), violation_summary(sym));

    const auto sgn =
        sharded(m.involutions().size(), threads, [&](size_t b, size_t e) {
          return invmod::sign_identity_violations(m, b, e);
        });
    add("sign-homomorphism", sgn.empty(), violation_summary(sgn));

    bool parity = true;
    for (cox::ElemId z : t.zs)
      parity = parity && (m.phi(z) - g.length(z)) % 2 == 0;
    add("phi-parity", parity,
        parity ? "phi(z) = l(z) mod 2 on every column"
               : "phi(z) != l(z) mod 2 on some column");

    if (g.complete()) {
      const int n = int(t.zs.size());
      const int r = laurent::rank(t.tildeL);
      add("independence-rank", r == n,
          "generic rank " + std::to_string(r) + " of " + std::to_string(n) +
              " columns");
      const int r2 = laurent::rank_at(t.tildeL, Rat(2));
      const int r3 = laurent::rank_at(t.tildeL, Rat(3));
      add("specialization-ranks", r2 == n && r3 == n,
          "rank " + std::to_string(r2) + " at u = 2, rank " +
              std::to_string(r3) + " at u = 3, of " + std::to_string(n));
      const int r1 = laurent::rank_at(t.tildeL, Rat(1));
      const int rm1 = laurent::rank_at(t.tildeL, Rat(-1));
      checks.push_back(info_entry(
          "singular-points", "rank " + std::to_string(r1) + " at u = 1, rank " +
                                 std::to_string(rm1) + " at u = -1, of " +
                                 std::to_string(n)));
    }

    json pi = json::array();
    for (size_t row = 0; row < t.xs.size(); ++row) {
      json p;
      p["x"] = g.word_str(t.xs[row]);
      p["pi_x"] = g.word_str(t.pi[row]);
      p["sign"] = t.pi_sign[row];
      pi.push_back(std::move(p));
    }
    j["pi"] = pi;
  }

  j["checks"] = checks;
  j["ok"] = ok;
  return j;
}

json mu_table_report(const cox::GroupTable& g, int x_length_bound) {
  json j = header("invhecke/table-mu/1", g);
  const invmod::InvModule m(g);
  const invmod::ModuleTables t = m.tables(x_length_bound);

  json rows = json::array();
  for (size_t r = 0; r < t.xs.size(); ++r) {
    for (size_t c = 0; c < t.zs.size(); ++c) {
      const Laurent& L = t.L.at(int(r), int(c));
      const Laurent& tl = t.tildeL.at(int(r), int(c));
      if (L.is_zero() && tl.is_zero()) continue;
      json row;
      row["x"] = g.word_str(t.xs[r]);
      row["z"] = g.word_str(t.zs[c]);
      row["L"] = L.str();
      row["tildeL"] = tl.str();
      row["lambda"] = t.lambda.at(int(r), int(c)).str();
      rows.push_back(std::move(row));
    }
  }
  j["rows"] = rows;

  json pi = json::array();
  for (size_t row = 0; row < t.xs.size(); ++row) {
    json p;
    p["x"] = g.word_str(t.xs[row]);
    p["pi_x"] = g.word_str(t.pi[row]);
    pi.push_back(std::move(p));
  }
  j["pi"] = pi;
  return j;
}

json biregular_report(const cox::GroupTable& g) {
  json j = header("invhecke/biregular/1", g);
  j["size"] = g.size();
  bool ok = true;

  json xs = json::array();
  for (const auto& [key, c] : bireg::biregular_X(g)) {
    json e;
    e["x"] = g.word_str(key.first);
    e["y"] = g.word_str(key.second);
    e["coeff"] = c.str();
    xs.push_back(std::move(e));
  }
  j["X"] = xs;

  json mt = json::array();
  for (cox::ElemId a = 0; a < g.size(); ++a) {
    json row;
    row["a"] = g.word_str(a);
    json terms = json::array();
    for (const auto& [x, y, c] : bireg::mu_column(g, a)) {
      json e;
      e["x"] = g.word_str(x);
      e["y"] = g.word_str(y);
      e["coeff"] = c.str();
      terms.push_back(std::move(e));
    }
    row["terms"] = terms;
    mt.push_back(std::move(row));
  }
  j["mu_T"] = mt;

  json sp = json::array();
  for (cox::ElemId y = 0; y < g.size(); ++y)
    for (cox::ElemId z = 0; z < g.size(); ++z) {
      json e;
      e["y"] = g.word_str(y);
      e["z"] = g.word_str(z);
      e["product"] = g.word_str(bireg::star_product(g, y, z));
      sp.push_back(std::move(e));
    }
  j["star_product"] = sp;

  if (g.size() <= 24) {
    const std::string reading = bireg::pi_reading(g);
    j["pi_reading"] = reading;
    ok = ok && (reading == "direct" || reading == "ambiguous");
    const auto bad = bireg::crosscheck_generic(g);
    j["crosscheck_mismatches"] = json(bad);
    ok = ok && bad.empty();
  } else {
    j["pi_reading"] = "skipped";
  }
  j["ok"] = ok;
  return j;
}

json cells_report(const cox::GroupTable& g, const std::string& emit) {
  json j = header("invhecke/cells-" + emit + "/1", g);
  j["size"] = g.size();
  const kl::KLData kd(g);

  if (emit == "kl") {
    json ps = json::array();
    json mus = json::array();
    for (cox::ElemId w = 0; w < g.size(); ++w) {
      for (const auto& [y, p] : kd.c_in_t(w)) {
        json e;
        e["y"] = g.word_str(y);
        e["w"] = g.word_str(w);
        e["p"] = p.str();
        ps.push_back(std::move(e));
        if (y != w && kd.mu(y, w) != 0) {
          json mu;
          mu["y"] = g.word_str(y);
          mu["w"] = g.word_str(w);
          mu["mu"] = kd.mu(y, w);
          mus.push_back(std::move(mu));
        }
      }
    }
    j["p"] = ps;
    j["mu"] = mus;
    j["ok"] = true;
    return j;
  }

  if (emit == "cells") {
    auto part = [&](int n, const std::function<const std::vector<cox::ElemId>&(
                                int)>& cell) {
      json out = json::array();
      for (int i = 0; i < n; ++i) {
        json c = json::array();
        for (cox::ElemId w : cell(i)) c.push_back(g.word_str(w));
        out.push_back(std::move(c));
      }
      return out;
    };
    j["left"] = part(kd.num_left_cells(),
                     [&](int i) -> const std::vector<cox::ElemId>& {
                       return kd.left_cell(i);
                     });
    j["right"] = part(kd.num_right_cells(),
                      [&](int i) -> const std::vector<cox::ElemId>& {
                        return kd.right_cell(i);
                      });
    j["two_sided"] = part(kd.num_two_sided_cells(),
                          [&](int i) -> const std::vector<cox::ElemId>& {
                            return kd.two_sided_cell(i);
                          });
    j["ok"] = true;
    return j;
  }

  if (emit == "jring") {
    json as = json::array();
    for (cox::ElemId w = 0; w < g.size(); ++w) {
      json e;
      e["w"] = g.word_str(w);
      e["a"] = kd.a(w);
      e["delta"] = kd.delta(w);
      as.push_back(std::move(e));
    }
    j["a"] = as;
    json ds = json::array();
    for (cox::ElemId d : kd.distinguished()) ds.push_back(g.word_str(d));
    j["distinguished"] = ds;
    json prods = json::array();
    for (cox::ElemId x = 0; x < g.size(); ++x)
      for (cox::ElemId y = 0; y < g.size(); ++y) {
        kl::JQ a{{x, Rat(1)}}, b{{y, Rat(1)}};
        const kl::JQ p = kd.jmul(a, b);
        if (p.empty()) continue;
        json row;
        row["x"] = g.word_str(x);
        row["y"] = g.word_str(y);
        json terms = json::array();
        for (const auto& [z, c] : p) {
          json e;
          e["z"] = g.word_str(z);
          e["coeff"] = rat_str(c);
          terms.push_back(std::move(e));
        }
        row["terms"] = terms;
        prods.push_back(std::move(row));
      }
    j["products"] = prods;
    j["ok"] = true;
    return j;
  }

  if (emit == "jcm") {
    const invmod::InvModule m(g);
    const kl::JcmResult r = kl::jcm_ideal(kd, m);
    bool ok = true;
    j["dim"] = r.dim();

    json ids = json::array();
    for (size_t i = 0; i < r.idempotents.size(); ++i) {
      json e;
      e["index"] = int(i);
      e["acts_nonzero"] = bool(r.acts_nonzero[i]);
      e["block_dim"] = r.block_dims[i];
      json terms = json::array();
      for (const auto& [z, c] : r.idempotents[i]) {
        json te;
        te["z"] = g.word_str(z);
        te["coeff"] = rat_str(c);
        terms.push_back(std::move(te));
      }
      e["terms"] = terms;
      ids.push_back(std::move(e));
    }
    j["idempotents"] = ids;

    json basis = json::array();
    for (const auto& row : r.basis) {
      json br = json::array();
      for (size_t z = 0; z < row.size(); ++z) {
        if (row[z] == 0) continue;
        json te;
        te["z"] = g.word_str(cox::ElemId(z));
        te["coeff"] = rat_str(row[z]);
        br.push_back(std::move(te));
      }
      basis.push_back(std::move(br));
    }
    j["basis"] = basis;

    const auto cps = kl::cell_pair_elements(kd);
    std::vector<std::vector<Rat>> inrows;
    json pairs = json::array();
    for (const auto& cp : cps) {
      const bool member = kl::jcm_contains(r, cp.elt, kd.size());
      ok = ok && member;
      json e;
      e["zcell"] = cp.zcell;
      e["zpcell"] = cp.zpcell;
      json terms = json::array();
      for (const auto& [z, c] : cp.elt) terms.push_back(g.word_str(z));
      e["terms"] = terms;
      e["in_ideal"] = member;
      pairs.push_back(std::move(e));
      if (member) {
        std::vector<Rat> row(kd.size(), Rat(0));
        for (const auto& [z, c] : cp.elt) row[z] = c;
        inrows.push_back(std::move(row));
      }
    }
    j["cell_pairs"] = pairs;
    j["cell_pairs_form_basis"] =
        int(inrows.size()) == r.dim() &&
        laurent::rank_rational(inrows) == r.dim();

    const kl::ReferenceBasisReport ref = kl::g2_reference_basis(kd, r);
    if (ref.applicable) {
      json rb;
      rb["ok"] = ref.ok;
      rb["detail"] = ref.detail;
      json els = json::array();
      for (const kl::JQ& e : ref.elements) {
        json words = json::array();
        for (const auto& [z, c] : e) words.push_back(g.word_str(z));
        els.push_back(std::move(words));
      }
      rb["elements"] = els;
      j["reference_basis"] = rb;
      ok = ok && ref.ok;
    }
    j["ok"] = ok;
    return j;
  }

  throw std::invalid_argument("unknown cells emission: " + emit);
}

json group_ktheory_report(const grp::FiniteGroup& g, const std::string& check) {
  json j;
  j["schema"] = "invhecke/group-ktheory/1";
  j["group"] = g.name();
  j["order"] = g.size();
  j["classes"] = g.num_classes();

  kth::KContext ctx(g);
  json pairs = json::array();
  for (int i = 0; i < ctx.num_pairs(); ++i) pairs.push_back(ctx.pair_name(i));
  j["pairs"] = pairs;

  const std::vector<long> v = ctx.direct_image();

  if (check == "prop32") {
    const std::vector<long> kappa = ctx.kottwitz_kappa();
    j["kappa"] = json(kappa);
    j["direct_image"] = json(v);
    const bool verified = ctx.verify_prop32();
    j["coefficients_equal"] = kappa == v;
    j["verified"] = verified;
    j["phi_injective"] = ctx.phi_injective();
    std::string alt;
    try {
      const std::vector<long> k2 =
          ctx.kottwitz_kappa(kth::KContext::KappaReading::kCenter);
      alt = k2 == v ? "matches" : "integral but differs";
    } catch (const kth::NonIntegralCoefficient& e) {
      alt = std::string("non-integral: ") + e.what();
    }
    j["center_reading"] = alt;
    j["ok"] = verified;
    return j;
  }

  if (check == "chi") {
    std::vector<Rat> vq(v.begin(), v.end());
    bool ok = true;
    json rows = json::array();
    for (int i = 0; i < ctx.num_pairs(); ++i) {
      const kth::BasisPair& p = ctx.pair(i);
      const grp::Subgroup& cent = ctx.centralizer(p.cls);
      const int fs = grp::frobenius_schur(cent.group,
                                          ctx.centralizer_table(p.cls), p.chr);
      json row;
      row["pair"] = ctx.pair_name(i);
      row["fs"] = fs;
      if (fs == 1) {
        const grp::Cyc val = ctx.chi_pairing(p.cls, p.chr, vq);
        const Rat expect =
            Rat(cent.group.size()) /
            Rat(ctx.centralizer_table(p.cls).degree[size_t(p.chr)]);
        const bool good = val.is_rational() && val.rational() == expect;
        row["chi_V"] = val.str();
        row["expected"] = rat_str(expect);

        grp::Cyc sum;
        for (int k = 0; k < ctx.num_pairs(); ++k)
          sum += Rat(v[size_t(k)]) * ctx.fourier_bracket(k, i);
        const bool sum_good = sum.is_rational() && sum.rational() == 1;
        row["bracket_sum"] = sum.str();
        row["checks_pass"] = good && sum_good;
        ok = ok && good && sum_good;
      } else {
        row["checks_pass"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    j["values"] = rows;
    j["ok"] = ok;
    return j;
  }

  if (check == "fourier") {
    json mat = json::array();
    bool symmetric = true;
    std::vector<std::vector<grp::Cyc>> b(
        size_t(ctx.num_pairs()), std::vector<grp::Cyc>(size_t(ctx.num_pairs())));
    for (int i = 0; i < ctx.num_pairs(); ++i)
      for (int k = 0; k < ctx.num_pairs(); ++k)
        b[size_t(i)][size_t(k)] = ctx.fourier_bracket(i, k);
    for (int i = 0; i < ctx.num_pairs(); ++i) {
      json row = json::array();
      for (int k = 0; k < ctx.num_pairs(); ++k) {
        row.push_back(b[size_t(i)][size_t(k)].str());
        symmetric = symmetric && b[size_t(i)][size_t(k)] == b[size_t(k)][size_t(i)];
      }
      mat.push_back(std::move(row));
    }
    j["matrix"] = mat;
    j["symmetric"] = symmetric;
    j["ok"] = true;
    return j;
  }

  throw std::invalid_argument("unknown check: " + check);
}

namespace {

bool is_scalar(const json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_str(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void tsv_walk(const std::string& prefix, const json& v, std::string& scalars,
              std::vector<std::string>& sections) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      tsv_walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value(),
               scalars, sections);
    return;
  }
  if (v.is_array()) {
    if (!v.empty() && v.begin()->is_object()) {
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (auto it = row.begin(); it != row.end(); ++it)
          if (std::find(cols.begin(), cols.end(), it.key()) == cols.end())
            cols.push_back(it.key());
      std::string s = "# " + prefix + "\n";
      for (size_t i = 0; i < cols.size(); ++i) {
        if (i) s += '\t';
        s += cols[i];
      }
      s += '\n';
      for (const auto& row : v) {
        for (size_t i = 0; i < cols.size(); ++i) {
          if (i) s += '\t';
          if (row.contains(cols[i])) {
            const json& cell = row[cols[i]];
            s += is_scalar(cell) ? scalar_str(cell) : cell.dump();
          }
        }
        s += '\n';
      }
      sections.push_back(std::move(s));
      return;
    }
    std::string line = prefix + "\t";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) line += ',';
      line += is_scalar(v[i]) ? scalar_str(v[i]) : v[i].dump();
    }
    scalars += line + "\n";
    return;
  }
  scalars += prefix + "\t" + scalar_str(v) + "\n";
}

}  // namespace

std::string to_tsv(const json& j) {
  std::string scalars;
  std::vector<std::string> sections;
  tsv_walk("", j, scalars, sections);
  std::string out = scalars;
  for (const std::string& s : sections) {
    out += '\n';
    out += s;
  }
  return out;
}

std::string to_text(const json& j, const std::string& format) {
  if (format == "tsv") return to_tsv(j);
  return j.dump(2) + "\n";
}

}  // namespace report
