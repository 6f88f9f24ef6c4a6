#include "hecke.hpp"

namespace hecke {

namespace {

const Laurent kQ = Laurent::u(2);                        // u^2
const Laurent kQm1 = Laurent::u(2) - Laurent(1);         // u^2 - 1

cox::ElemId checked_right(const cox::GroupTable& g, cox::ElemId w,
                          cox::GenIdx s) {
  cox::ElemId v = g.right(w, s);
  if (v == cox::npos)
    throw cox::BallExceeded("Hecke product leaves the enumerated ball");
  return v;
}

}  // namespace

HeckeElt mul_gen_right(const cox::GroupTable& g, const HeckeElt& h,
                       cox::GenIdx s) {
  HeckeElt out;
  for (const auto& [w, c] : h.terms()) {
    if (g.right_descent(w, s)) {
      out.add_term(w, c * kQm1);
      out.add_term(g.right(w, s), c * kQ);
    } else {
      out.add_term(checked_right(g, w, s), c);
    }
  }
  return out;
}

HeckeElt mul_gen_left(const cox::GroupTable& g, cox::GenIdx s,
                      const HeckeElt& h) {
  HeckeElt out;
  for (const auto& [w, c] : h.terms()) {
    cox::ElemId v = g.left(s, w);
    if (g.left_descent(s, w)) {
      out.add_term(w, c * kQm1);
      out.add_term(v, c * kQ);
    } else {
      if (v == cox::npos)
        throw cox::BallExceeded("Hecke product leaves the enumerated ball");
      out.add_term(v, c);
    }
  }
  return out;
}

HeckeElt mul(const cox::GroupTable& g, const HeckeElt& a, const HeckeElt& b) {
  HeckeElt out;
  for (const auto& [w, c] : b.terms()) {
    HeckeElt part = a;
    for (cox::GenIdx s : g.word(w)) part = mul_gen_right(g, part, s);
    part *= c;
    out += part;
  }
  return out;
}

Laurent tau(const HeckeElt& h) { return h.coeff(0); }

Laurent tau_triple(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y,
                   cox::ElemId z) {
  HeckeElt xy = HeckeElt::t(x);
  for (cox::GenIdx s : g.word(y)) xy = mul_gen_right(g, xy, s);
  return Laurent::u(2 * g.length(z)) * xy.coeff(g.inverse(z));
}

HeckeElt antiauto(const cox::GroupTable& g, const HeckeElt& h) {
  HeckeElt out;
  for (const auto& [w, c] : h.terms()) out.add_term(g.inverse(w), c);
  return out;
}

HeckeElt bar(const cox::GroupTable& g, const HeckeElt& h) {
  // bar(T_w) = u^{-l(w)} Ttilde_{s_1}^{-1} ... Ttilde_{s_k}^{-1} for any
  // reduced word s_1...s_k of w, with Ttilde_s^{-1} = u^{-1} T_s + (u^{-1}-u).
  const Laurent uinv = Laurent::u(-1);
  const Laurent shift = Laurent::u(-1) - Laurent::u(1);
  HeckeElt out;
  for (const auto& [w, c] : h.terms()) {
    HeckeElt e = HeckeElt::t(0);
    for (cox::GenIdx s : g.word(w)) {
      HeckeElt next = mul_gen_right(g, e, s);
      next *= uinv;
      e *= shift;
      next += e;
      e = std::move(next);
    }
    e *= c.invert_u() * Laurent::u(-g.length(w));
    out += e;
  }
  return out;
}

HeckeElt star_fixed_sum(const cox::GroupTable& g) {
  HeckeElt out;
  for (cox::ElemId w = 0; w < g.size(); ++w)
    if (g.star_elem(w) == w) out.add_term(w, Laurent::u(-g.length(w)));
  return out;
}

laurent::PolyMatrix left_mult_matrix(const cox::GroupTable& g,
                                     const HeckeElt& h) {
  const int n = int(g.size());
  laurent::PolyMatrix m(n, n);
  for (cox::ElemId w = 0; w < g.size(); ++w) {
    HeckeElt col = mul(g, h, HeckeElt::t(w));
    for (const auto& [v, c] : col.terms()) m.at(int(v), int(w)) = c;
  }
  return m;
}

}  // namespace hecke
