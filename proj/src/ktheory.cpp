#include "ktheory.hpp"

#include <algorithm>

#include "laurent.hpp"

namespace kth {

using grp::CharTable;
using grp::Cyc;
using grp::FiniteGroup;
using grp::Subgroup;

KContext::KContext(grp::FiniteGroup gamma)
    : g_(std::move(gamma)), field_(g_.exponent()) {
  const int nc = g_.num_classes();
  pair_index_.resize(size_t(nc));
  for (int c = 0; c < nc; ++c) {
    cent_.push_back(grp::subgroup_generated(g_, g_.centralizer(g_.class_rep(c))));
    tables_.push_back(grp::character_table(cent_.back().group));
    for (int k = 0; k < tables_.back().num_chars(); ++k) {
      pair_index_[size_t(c)].push_back(int(pairs_.size()));
      pairs_.push_back(BasisPair{c, k});
    }
  }
  for (int g = 0; g < g_.size(); ++g)
    for (int h = 0; h < g_.size(); ++h)
      if (g_.mult(g, h) == g_.mult(h, g)) gh_.emplace_back(g, h);
}

std::string KContext::pair_name(int i) const {
  const BasisPair& p = pairs_[size_t(i)];
  return "x" + std::to_string(g_.class_rep(p.cls)) + ":chi" +
         std::to_string(p.chr);
}

Cyc KContext::phi_basis(int i, int g, int h) const {
  const BasisPair& p = pairs_[size_t(i)];
  Cyc acc(field_, Rat(0));
  if (g_.class_of(g) != p.cls) return acc;
  const int x = g_.class_rep(p.cls);
  const Subgroup& cent = cent_[size_t(p.cls)];
  const CharTable& t = tables_[size_t(p.cls)];
  int count = 0;
  for (int a = 0; a < g_.size(); ++a) {
    if (g_.mult(g_.mult(a, g), g_.inverse(a)) != x) continue;
    const int ah = g_.mult(g_.mult(a, h), g_.inverse(a));
    const int sub = cent.from_parent[size_t(ah)];
    if (sub < 0) throw std::logic_error("conjugate escaped the centralizer");
    acc += t.value(p.chr, cent.group, sub).lift(field_);
    ++count;
  }
  if (count != int(cent.to_parent.size()))
    throw std::logic_error("transporter count != centralizer order");
  return Rat(1, long(cent.to_parent.size())) * acc;
}

Cyc KContext::phi_bundle(const std::vector<Rat>& coeffs, int g, int h) const {
  Cyc acc(field_, Rat(0));
  for (int i = 0; i < num_pairs(); ++i) {
    if (coeffs[size_t(i)] == 0) continue;
    acc += coeffs[size_t(i)] * phi_basis(i, g, h);
  }
  return acc;
}

long KContext::square_root_count(int g, int h) const {
  long n = 0;
  for (int s = 0; s < g_.size(); ++s)
    if (g_.mult(s, s) == g && g_.mult(s, h) == g_.mult(h, s)) ++n;
  return n;
}

std::vector<Rat> KContext::kappa_coeffs(KappaReading r) const {
  std::vector<Rat> out(size_t(num_pairs()), Rat(0));
  for (int c = 0; c < g_.num_classes(); ++c) {
    const int x = g_.class_rep(c);
    const Subgroup& cent = cent_[size_t(c)];
    const CharTable& t = tables_[size_t(c)];
    const long cent_order = long(cent.to_parent.size());
    long center_order = 0;
    if (r == KappaReading::kCenter) {
      const FiniteGroup& h = cent.group;
      for (int z = 0; z < h.size(); ++z) {
        bool central = true;
        for (int a = 0; a < h.size() && central; ++a)
          central = h.mult(z, a) == h.mult(a, z);
        if (central) ++center_order;
      }
    }
    for (int s : g_.square_roots(x)) {
      // Z_{Gamma_x}(s): everything commuting with both x and s.  A square
      // root of x always commutes with x, so s itself lies in Gamma_x.
      std::vector<int> zc_sub;
      for (int a : g_.centralizer2(x, s))
        zc_sub.push_back(cent.from_parent[size_t(a)]);
      const Rat weight(
          r == KappaReading::kCenter ? center_order : long(zc_sub.size()),
          cent_order);
      for (int k = 0; k < t.num_chars(); ++k) {
        const long m = grp::trivial_multiplicity_on(cent.group, t, k, zc_sub);
        if (m != 0) out[size_t(pair_index(c, k))] += weight * Rat(m);
      }
    }
  }
  return out;
}

std::vector<long> KContext::kottwitz_kappa(KappaReading r) const {
  const std::vector<Rat> raw = kappa_coeffs(r);
  std::vector<long> out(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    const laurent::Int num = boost::multiprecision::numerator(raw[i]);
    const laurent::Int den = boost::multiprecision::denominator(raw[i]);
    if (den != 1 || num < 0)
      throw NonIntegralCoefficient("kappa coefficient at " +
                                   pair_name(int(i)) + " is " + raw[i].str());
    out[i] = long(num);
  }
  return out;
}

std::vector<long> KContext::direct_image() const {
  std::vector<long> out(size_t(num_pairs()), 0);
  for (int c = 0; c < g_.num_classes(); ++c) {
    const int x = g_.class_rep(c);
    const Subgroup& cent = cent_[size_t(c)];
    const CharTable& t = tables_[size_t(c)];
    const FiniteGroup& h = cent.group;
    const std::vector<int> roots = g_.square_roots(x);
    if (roots.empty()) continue;
    // Permutation character of Gamma_x on the square roots of x.
    std::vector<long> fix(size_t(h.size()), 0);
    for (int gi = 0; gi < h.size(); ++gi) {
      const int gp = cent.to_parent[size_t(gi)];
      for (int s : roots)
        if (g_.mult(g_.mult(gp, s), g_.inverse(gp)) == s) ++fix[size_t(gi)];
    }
    for (int k = 0; k < t.num_chars(); ++k) {
      // <perm, chi_k> = |H|^-1 sum fix(g) chi_k(g^-1)
      Cyc acc(t.field, Rat(0));
      for (int gi = 0; gi < h.size(); ++gi)
        acc += Rat(fix[size_t(gi)]) * t.value(k, h, h.inverse(gi));
      if (!acc.is_rational())
        throw std::logic_error("irrational permutation multiplicity");
      const Rat m = acc.rational() / Rat(h.size());
      const laurent::Int num = boost::multiprecision::numerator(m);
      if (boost::multiprecision::denominator(m) != 1 || num < 0)
        throw std::logic_error("permutation multiplicity not in N");
      out[size_t(pair_index(c, k))] = long(num);
    }
  }
  return out;
}

Cyc KContext::chi_pairing(int y_cls, int sigma,
                          const std::vector<Rat>& coeffs) const {
  const int y = g_.class_rep(y_cls);
  const Subgroup& cent = cent_[size_t(y_cls)];
  const CharTable& t = tables_[size_t(y_cls)];
  Cyc acc(field_, Rat(0));
  for (size_t gi = 0; gi < cent.to_parent.size(); ++gi) {
    const int gamma = cent.to_parent[gi];
    const Cyc tr = t.chi[size_t(sigma)][size_t(cent.group.class_of(int(gi)))]
                       .lift(field_);
    if (tr.is_zero()) continue;
    acc += phi_bundle(coeffs, gamma, y) * tr;
  }
  return Rat(1, t.degree[size_t(sigma)]) * acc;
}

Cyc KContext::chi_pairing_basis(int y_cls, int sigma, int i) const {
  std::vector<Rat> coeffs(size_t(num_pairs()), Rat(0));
  coeffs[size_t(i)] = 1;
  return chi_pairing(y_cls, sigma, coeffs);
}

Cyc KContext::fourier_bracket(int i, int j) const {
  const BasisPair& q = pairs_[size_t(j)];
  const grp::CharTable& t = tables_[size_t(q.cls)];
  const int dual = grp::dual_character(cent_[size_t(q.cls)].group, t, q.chr);
  const Cyc chi = chi_pairing_basis(q.cls, dual, i);
  return Rat(t.degree[size_t(q.chr)],
             long(cent_[size_t(q.cls)].to_parent.size())) *
         chi;
}

bool KContext::phi_injective() const {
  const int deg = field_.degree();
  std::vector<std::vector<Rat>> m(
      size_t(num_pairs()),
      std::vector<Rat>(gh_.size() * size_t(deg), Rat(0)));
  for (int i = 0; i < num_pairs(); ++i)
    for (size_t p = 0; p < gh_.size(); ++p) {
      const Cyc v = phi_basis(i, gh_[p].first, gh_[p].second);
      for (int d = 0; d < deg; ++d)
        m[size_t(i)][p * size_t(deg) + size_t(d)] = v.coeffs()[size_t(d)];
    }
  return laurent::rank_rational(m) == num_pairs();
}

bool KContext::verify_prop32() const {
  const std::vector<long> v = direct_image();
  const std::vector<long> k = kottwitz_kappa(KappaReading::kRootCentralizer);
  if (v != k) return false;
  std::vector<Rat> coeffs(v.size());
  for (size_t i = 0; i < v.size(); ++i) coeffs[i] = Rat(v[i]);
  for (const auto& [g, h] : gh_) {
    const Cyc phi = phi_bundle(coeffs, g, h);
    if (!phi.is_rational() ||
        phi.rational() != Rat(square_root_count(g, h)))
      return false;
  }
  return true;
}

}  // namespace kth
