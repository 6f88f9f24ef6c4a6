#include "biregular.hpp"

#include "invmodule.hpp"

#include <algorithm>
#include <sstream>

namespace bireg {

namespace {

std::string where(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y,
                  cox::ElemId z) {
  std::ostringstream os;
  os << "(x, y, z) = (" << g.word_str(x) << ", " << g.word_str(y) << ", "
     << g.word_str(z) << ")";
  return os.str();
}

}  // namespace

Triple triple(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y,
              cox::ElemId z) {
  const Laurent t = hecke::tau_triple(g, x, y, z);
  Triple r;
  r.p = Laurent::u(-2 * g.length(z) - 2 * g.length(y)) * t;
  r.pprime = Laurent::u(-2 * g.length(x)) * t;
  if (!r.p.in_z_uinv())
    throw ShapeViolation("p has positive powers of u at " + where(g, x, y, z));
  if (!r.pprime.in_z_u())
    throw ShapeViolation("p' has negative powers of u at " +
                         where(g, x, y, z));
  r.d = long(r.p.coeff(0));
  r.dprime = long(r.pprime.coeff(0));
  if (r.d != 0 && r.d != 1)
    throw ShapeViolation("constant term of p outside {0,1} at " +
                         where(g, x, y, z));
  if (r.dprime < -1 || r.dprime > 1)
    throw ShapeViolation("constant term of p' outside {-1,0,1} at " +
                         where(g, x, y, z));
  return r;
}

cox::ElemId star_product(const cox::GroupTable& g, cox::ElemId y,
                         cox::ElemId z) {
  while (z != 0) {
    const cox::GenIdx s = g.word(z).front();
    const cox::ElemId ys = g.right(y, s);
    if (g.length(ys) > g.length(y)) y = ys;
    z = g.left(s, z);
  }
  return g.inverse(y);
}

cox::ElemId star_product_scan(const cox::GroupTable& g, cox::ElemId y,
                              cox::ElemId z) {
  // tau(T_x T_y T_z) = u^{2l(x)} [coefficient of T_{x^-1} in T_y T_z].
  const hecke::HeckeElt prod =
      hecke::mul(g, hecke::HeckeElt::t(y), hecke::HeckeElt::t(z));
  cox::ElemId found = cox::npos;
  for (cox::ElemId x = 0; x < g.size(); ++x) {
    const Laurent p = Laurent::u(2 * g.length(x) - 2 * g.length(z) -
                                 2 * g.length(y)) *
                      prod.coeff(g.inverse(x));
    if (!p.in_z_uinv())
      throw ShapeViolation("p has positive powers of u at " +
                           where(g, x, y, z));
    if (p.coeff(0) == 1) {
      if (found != cox::npos)
        throw UniquenessViolation("several x satisfy d_{x,y,z} = 1 at " +
                                  where(g, found, y, z));
      found = x;
    } else if (p.coeff(0) != 0) {
      throw ShapeViolation("constant term of p outside {0,1} at " +
                           where(g, x, y, z));
    }
  }
  if (found == cox::npos)
    throw UniquenessViolation("no x satisfies d_{x,y,z} = 1 for (y, z) = (" +
                              g.word_str(y) + ", " + g.word_str(z) + ")");
  return found;
}

cox::ElemId pi(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y) {
  return star_product(g, y, g.inverse(x));
}

Laurent mu_coeff(const cox::GroupTable& g, cox::ElemId a, cox::ElemId x,
                 cox::ElemId y) {
  return Laurent::u(-2 * g.length(x) - 2 * g.length(y)) *
         hecke::tau_triple(g, a, y, g.inverse(x));
}

std::vector<std::tuple<cox::ElemId, cox::ElemId, Laurent>> mu_column(
    const cox::GroupTable& g, cox::ElemId a) {
  std::vector<std::tuple<cox::ElemId, cox::ElemId, Laurent>> out;
  for (cox::ElemId y = 0; y < g.size(); ++y) {
    const hecke::HeckeElt prod =
        hecke::mul(g, hecke::HeckeElt::t(a), hecke::HeckeElt::t(y));
    const Laurent shift = Laurent::u(-2 * g.length(y));
    for (const auto& [x, c] : prod.terms()) out.emplace_back(x, y, shift * c);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& l, const auto& r) {
              return std::pair(std::get<0>(l), std::get<1>(l)) <
                     std::pair(std::get<0>(r), std::get<1>(r));
            });
  return out;
}

PairElt biregular_X(const cox::GroupTable& g) {
  PairElt x;
  for (cox::ElemId w = 0; w < g.size(); ++w)
    x[{w, w}] = Laurent::u(-2 * g.length(w));
  return x;
}

PairElt act_first(const cox::GroupTable& g, cox::ElemId a, const PairElt& m) {
  PairElt out;
  for (const auto& [key, c] : m) {
    const hecke::HeckeElt prod =
        hecke::mul(g, hecke::HeckeElt::t(a), hecke::HeckeElt::t(key.first));
    for (const auto& [v, cv] : prod.terms()) {
      Laurent& slot = out[{v, key.second}];
      slot = slot + c * cv;
      if (slot.is_zero()) out.erase({v, key.second});
    }
  }
  return out;
}

PairElt act_second(const cox::GroupTable& g, cox::ElemId a, const PairElt& m) {
  PairElt out;
  for (const auto& [key, c] : m) {
    const hecke::HeckeElt prod =
        hecke::mul(g, hecke::HeckeElt::t(a), hecke::HeckeElt::t(key.second));
    for (const auto& [v, cv] : prod.terms()) {
      Laurent& slot = out[{key.first, v}];
      slot = slot + c * cv;
      if (slot.is_zero()) out.erase({key.first, v});
    }
  }
  return out;
}

PairElt mu_of_Tz(const cox::GroupTable& g, cox::ElemId z) {
  return act_first(g, z, biregular_X(g));
}

namespace {

struct SquareRun {
  cox::GroupTable g2;
  invmod::ModuleTables t;
};

SquareRun run_square(const cox::GroupTable& base) {
  if (base.size() > 24)
    throw cox::LimitExceeded(
        "the generic crosscheck is restricted to groups of at most 24 "
        "elements");
  const cox::CoxeterSystem sq =
      cox::CoxeterSystem::product_square(base.system());
  SquareRun run{cox::GroupTable::enumerate(sq), {}};
  run.t = invmod::InvModule(run.g2).tables();
  return run;
}

std::pair<cox::ElemId, cox::ElemId> split_pair(const cox::GroupTable& base,
                                               const cox::GroupTable& g2,
                                               cox::ElemId e) {
  const int r = base.system().rank();
  cox::ElemId x = 0, y = 0;
  for (cox::GenIdx s : g2.word(e)) {
    if (s < r)
      x = base.right(x, s);
    else
      y = base.right(y, s - r);
  }
  return {x, y};
}

}  // namespace

std::vector<std::string> crosscheck_generic(const cox::GroupTable& base) {
  std::vector<std::string> bad;

  const SquareRun run = run_square(base);
  const cox::GroupTable& g2 = run.g2;
  const invmod::ModuleTables& t = run.t;

  auto split = [&](cox::ElemId e) { return split_pair(base, g2, e); };
  // (x, y) -> id of the corresponding element of the product group.
  std::map<std::pair<cox::ElemId, cox::ElemId>, cox::ElemId> join;
  for (cox::ElemId e = 0; e < g2.size(); ++e) join[split(e)] = e;

  // Column by column: the module expansion of mu(a_{(a, a^-1)}) against the
  // tau-based coefficients N^{x,y}_a.
  for (cox::ElemId a = 0; a < base.size(); ++a) {
    const cox::ElemId za = join.at({a, base.inverse(a)});
    const int col = t.col(za);
    if (col < 0) {
      bad.push_back("(" + base.word_str(a) +
                    ", inverse) is missing from the product group's "
                    "twisted-involution columns");
      continue;
    }
    std::map<std::pair<cox::ElemId, cox::ElemId>, Laurent> tau_route;
    for (const auto& [x, y, c] : mu_column(base, a)) tau_route[{x, y}] = c;
    for (size_t row = 0; row < t.xs.size(); ++row) {
      const auto [x, y] = split(t.xs[row]);
      const Laurent& lhs = t.tildeL.at(row, size_t(col));
      const auto it = tau_route.find({x, y});
      const Laurent rhs = it == tau_route.end() ? Laurent() : it->second;
      if (!(lhs == rhs))
        bad.push_back("module coefficient of T_" + base.word_str(x) +
                      " (x) T_" + base.word_str(y) + " in mu(T_" +
                      base.word_str(a) + ") is " + lhs.str() +
                      ", tau route gives " + rhs.str());
      if (it != tau_route.end()) tau_route.erase(it);
    }
    for (const auto& [key, c] : tau_route)
      if (!c.is_zero())
        bad.push_back("tau route has an extra term at T_" +
                      base.word_str(key.first) + " (x) T_" +
                      base.word_str(key.second) + " in mu(T_" +
                      base.word_str(a) + "): " + c.str());
  }

  // Row by row: the module's u = 0 map against the star product.
  for (size_t row = 0; row < t.xs.size(); ++row) {
    const auto [x, y] = split(t.xs[row]);
    const auto [px, py] = split(t.pi[row]);
    const cox::ElemId direct = pi(base, x, y);
    if (px != direct || py != base.inverse(direct))
      bad.push_back("module sends (" + base.word_str(x) + ", " +
                    base.word_str(y) + ") to (" + base.word_str(px) + ", " +
                    base.word_str(py) + ") at u = 0 but the star product " +
                    "gives " + base.word_str(direct));
  }

  return bad;
}

std::string pi_reading(const cox::GroupTable& base) {
  const SquareRun run = run_square(base);
  bool direct_ok = true, inverse_ok = true;
  for (size_t row = 0; row < run.t.xs.size(); ++row) {
    const auto [x, y] = split_pair(base, run.g2, run.t.xs[row]);
    const cox::ElemId module_w = split_pair(base, run.g2, run.t.pi[row]).first;
    const cox::ElemId w = star_product(base, y, base.inverse(x));
    if (module_w != w) direct_ok = false;
    if (module_w != base.inverse(w)) inverse_ok = false;
  }
  if (direct_ok && inverse_ok) return "ambiguous";
  if (direct_ok) return "direct";
  if (inverse_ok) return "inverse";
  return "neither";
}

}  // namespace bireg
