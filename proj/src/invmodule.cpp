#include "invmodule.hpp"

#include <algorithm>
#include <stdexcept>

namespace invmod {

namespace {

const Laurent kU = Laurent::u(1);
const Laurent kUp1 = Laurent::u(1) + Laurent(1);                  // u + 1
const Laurent kQ = Laurent::u(2);                                 // u^2
const Laurent kQm1 = Laurent::u(2) - Laurent(1);                  // u^2 - 1
const Laurent kQmU = Laurent::u(2) - Laurent::u(1);               // u^2 - u
const Laurent kQmUm1 = Laurent::u(2) - Laurent::u(1) - Laurent(1);  // u^2-u-1

}  // namespace

GenStep classify(const cox::GroupTable& g, cox::GenIdx s, cox::ElemId w) {
  const cox::GenIdx ss = g.system().star()(s);
  const cox::ElemId sw = g.left(s, w);
  const cox::ElemId wss = g.right(w, ss);
  if (sw == cox::npos || wss == cox::npos)
    throw cox::BallExceeded("generator action undecidable at the ball edge");
  const bool down = g.length(sw) < g.length(w);
  if (sw == wss) return {down ? GenCase::kCommuteDown : GenCase::kCommuteUp, sw};
  const cox::ElemId sws = g.right(sw, ss);
  if (sws == cox::npos)
    throw cox::BallExceeded("generator action leaves the enumerated ball");
  return {down ? GenCase::kTwistDown : GenCase::kTwistUp, sws};
}

InvModule::InvModule(const cox::GroupTable& g) : g_(&g) {
  elems_ = g.twisted_involutions();
  pos_.assign(size_t(g.size()), -1);
  for (size_t i = 0; i < elems_.size(); ++i) pos_[size_t(elems_[i])] = int(i);

  // phi(1) = 0; for a left descent s of z: phi(z) = phi(sz) + 1 when
  // sz = zs*, otherwise phi(z) = phi(szs*).  Ids ascend with length, so a
  // single pass in id order resolves every value.
  phi_.assign(elems_.size(), 0);
  eps_.assign(elems_.size(), 1);
  for (size_t i = 0; i < elems_.size(); ++i) {
    const cox::ElemId z = elems_[i];
    if (z == 0) continue;
    const cox::GenIdx s = g.word(z).front();
    GenStep step = classify(g, s, z);  // descent cases only: stays in ball
    const int ppos = pos_[size_t(step.partner)];
    if (ppos < 0)
      throw std::logic_error("descent of a twisted involution left I_*");
    phi_[i] = phi_[size_t(ppos)] + (step.kind == GenCase::kCommuteDown ? 1 : 0);
    const int l = g.length(z);
    eps_[i] = ((l + phi_[i]) / 2) % 2 == 0 ? 1 : -1;
  }
}

int InvModule::pos_at(cox::ElemId z) const {
  if (!contains(z))
    throw std::invalid_argument("element is not a twisted involution");
  return pos_[size_t(z)];
}

Elt InvModule::act_gen(cox::GenIdx s, const Elt& m) const {
  Elt out;
  auto add = [&out](cox::ElemId w, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = out.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  for (const auto& [w, c] : m) {
    GenStep step = classify(*g_, s, w);
    switch (step.kind) {
      case GenCase::kCommuteUp:
        add(w, c * kU);
        add(step.partner, c * kUp1);
        break;
      case GenCase::kCommuteDown:
        add(w, c * kQmUm1);
        add(step.partner, c * kQmU);
        break;
      case GenCase::kTwistUp:
        add(step.partner, c);
        break;
      case GenCase::kTwistDown:
        add(w, c * kQm1);
        add(step.partner, c * kQ);
        break;
    }
  }
  return out;
}

Elt InvModule::act(cox::ElemId x, const Elt& m) const {
  // T_x = T_{s_1} ... T_{s_k} for a reduced word, applied right-to-left.
  Elt cur = m;
  const auto& word = g_->word(x);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    cur = act_gen(*it, cur);
  return cur;
}

std::pair<cox::ElemId, int> InvModule::circ(cox::ElemId x,
                                            cox::ElemId w) const {
  // u = 0 action: Tbar_s abar_w = abar_{sw} (sw = ws* > w), abar_{sws*}
  // (sw != ws* > w), -abar_w (sw < w).
  cox::ElemId cur = w;
  int sign = 1;
  (void)pos_at(w);
  const auto& word = g_->word(x);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    GenStep step = classify(*g_, *it, cur);
    switch (step.kind) {
      case GenCase::kCommuteUp:
      case GenCase::kTwistUp:
        cur = step.partner;
        break;
      case GenCase::kCommuteDown:
      case GenCase::kTwistDown:
        sign = -sign;
        break;
    }
  }
  return {cur, sign};
}

ModuleTables InvModule::tables(int x_length_bound) const {
  const cox::GroupTable& g = *g_;
  ModuleTables t;
  t.xpos.assign(size_t(g.size()), -1);
  t.zpos.assign(size_t(g.size()), -1);
  for (cox::ElemId x = 0; x < g.size(); ++x) {
    if (x_length_bound >= 0 && g.length(x) > x_length_bound) break;
    t.xpos[size_t(x)] = int(t.xs.size());
    t.xs.push_back(x);
  }
  t.zs = elems_;
  for (size_t i = 0; i < t.zs.size(); ++i) t.zpos[size_t(t.zs[i])] = int(i);

  const int nx = int(t.xs.size());
  const int nz = int(t.zs.size());
  t.L = laurent::PolyMatrix(nx, nz);
  t.barL = laurent::PolyMatrix(nx, nz);
  t.tildeL = laurent::PolyMatrix(nx, nz);
  t.lambda = laurent::PolyMatrix(nx, nz);
  t.pi.assign(size_t(nx), 0);
  t.pi_sign.assign(size_t(nx), 1);

  // Row DP: T_x a_1 = T_s (T_{x'} a_1) with s the first letter of the
  // shortlex word of x and x' = sx (an earlier row).
  std::vector<Elt> rows(static_cast<size_t>(nx));
  rows[0] = Elt{{cox::ElemId(0), Laurent(1)}};
  for (int r = 1; r < nx; ++r) {
    const cox::ElemId x = t.xs[size_t(r)];
    const cox::GenIdx s = g.word(x).front();
    const int parent = t.xpos[size_t(g.left(s, x))];
    rows[size_t(r)] = act_gen(s, rows[size_t(parent)]);

    auto [pz, psign] = std::pair(t.pi[size_t(parent)], t.pi_sign[size_t(parent)]);
    GenStep step = classify(g, s, pz);
    switch (step.kind) {
      case GenCase::kCommuteUp:
      case GenCase::kTwistUp:
        t.pi[size_t(r)] = step.partner;
        t.pi_sign[size_t(r)] = psign;
        break;
      case GenCase::kCommuteDown:
      case GenCase::kTwistDown:
        t.pi[size_t(r)] = pz;
        t.pi_sign[size_t(r)] = -psign;
        break;
    }
  }

  for (int r = 0; r < nx; ++r) {
    const int lx = g.length(t.xs[size_t(r)]);
    for (const auto& [z, c] : rows[size_t(r)]) {
      const int col = t.zpos[size_t(z)];
      if (col < 0)
        throw std::logic_error("module action left the twisted involutions");
      if (!c.in_z_u())
        throw IntegralityViolation("table entry at x = " +
                                   g.word_str(t.xs[size_t(r)]) + ", z = " +
                                   g.word_str(z) + " has a negative u-power");
      t.L.at(r, col) = c;
      Laurent b = c.bar();
      t.barL.at(r, col) = b;
      Laurent tl = (lx % 2 ? -b : b);
      if (eps(z) < 0) tl = -tl;
      if (!tl.in_z_uinv())
        throw IntegralityViolation("renormalized entry at x = " +
                                   g.word_str(t.xs[size_t(r)]) + ", z = " +
                                   g.word_str(z) + " has a positive u-power");
      t.tildeL.at(r, col) = tl;
      Laurent denom = laurent::pow(Laurent::u(1) - Laurent(1), unsigned(phi(z)));
      t.lambda.at(r, col) = tl.divide_exact(denom);
    }
  }
  return t;
}

std::vector<cox::ElemId> pi_from_tilde(const ModuleTables& t) {
  std::vector<cox::ElemId> out(t.xs.size());
  for (size_t r = 0; r < t.xs.size(); ++r) {
    int hits = 0;
    for (size_t c = 0; c < t.zs.size(); ++c) {
      const laurent::Int n =
          t.tildeL.at(int(r), int(c)).const_term_at_u_inv_zero();
      if (n == 0) continue;
      if (n != 1)
        throw PiViolation("constant term " + n.str() + " at row " +
                          std::to_string(r) + " is outside {0,1}");
      out[r] = t.zs[c];
      ++hits;
    }
    if (hits != 1)
      throw PiViolation("row " + std::to_string(r) + " has " +
                        std::to_string(hits) + " unit constant terms");
  }
  return out;
}

namespace {

// One recursion instance: coefficients on (partner entry, base entry,
// shorter-row entry), with the identity cp * P + cz * Z + cs * S = 0.
struct Identity {
  Laurent cp, cz, cs;
};

// The eight identities for each of the three table forms, indexed by
// [form][case] with case = 4 * (sx > x) + 2 * descent-of-z + twist.
std::vector<std::vector<Identity>> recursion_identities() {
  const Laurent u = Laurent::u(1);
  const Laurent u2 = Laurent::u(2);
  const Laurent one(1);
  std::vector<std::vector<Identity>> ids(3);
  // plain form
  ids[0] = {
      {u2 - u, -(u2 - u - one), -u2},   // commute up,   sx < x
      {u2, -(u2 - one), -u2},           // twist up,     sx < x
      {u + one, -u, -u2},               // commute down, sx < x
      {one, Laurent(), -u2},            // twist down,   sx < x
      {u2 - u, u, -one},                // commute up,   sx > x
      {u2, Laurent(), -one},            // twist up,     sx > x
      {u + one, u2 - u - one, -one},    // commute down, sx > x
      {one, u2 - one, -one},            // twist down,   sx > x
  };
  // barred form
  ids[1] = {
      {one + u, -(-u2 + u + one), -one},
      {one, -(one - u2), -one},
      {u2 - u, u, -one},
      {u2, Laurent(), -one},
      {one + u, -u, -u2},
      {one, Laurent(), -u2},
      {u2 - u, -u2 + u + one, -u2},
      {u2, one - u2, -u2},
  };
  // renormalized form
  ids[2] = {
      {one + u, -(u2 - u - one), -one},
      {one, -(u2 - one), -one},
      {u2 - u, -u, -one},
      {u2, Laurent(), -one},
      {one + u, u, -u2},
      {one, Laurent(), -u2},
      {u2 - u, u2 - u - one, -u2},
      {u2, u2 - one, -u2},
  };
  return ids;
}

}  // namespace

std::vector<std::string> validate_recursions(const InvModule& m,
                                             const ModuleTables& t,
                                             size_t row_begin,
                                             size_t row_end) {
  const cox::GroupTable& g = m.table();
  const int rank = g.system().rank();
  const auto ids = recursion_identities();
  const laurent::PolyMatrix* forms[3] = {&t.L, &t.barL, &t.tildeL};
  const char* names[3] = {"plain", "barred", "renormalized"};
  std::vector<std::string> bad;

  row_end = std::min(row_end, t.xs.size());
  for (size_t row = row_begin; row < row_end; ++row) {
    const cox::ElemId x = t.xs[row];
    for (cox::GenIdx s = 0; s < rank; ++s) {
      const cox::ElemId sx = g.left(s, x);
      if (sx == cox::npos) continue;
      const int rx = t.row(x), rsx = t.row(sx);
      if (rsx < 0) continue;  // outside the covered rows
      const bool xup = g.length(sx) > g.length(x);
      for (cox::ElemId z : t.zs) {
        GenStep step;
        try {
          step = classify(g, s, z);
        } catch (const cox::BallExceeded&) {
          continue;
        }
        const int cz = t.col(z);
        const int cpart = t.col(step.partner);
        if (cpart < 0) continue;
        const bool twist =
            step.kind == GenCase::kTwistUp || step.kind == GenCase::kTwistDown;
        const bool zdown = step.kind == GenCase::kCommuteDown ||
                           step.kind == GenCase::kTwistDown;
        const size_t idx =
            4 * size_t(xup) + 2 * size_t(zdown) + size_t(twist);
        for (int f = 0; f < 3; ++f) {
          const laurent::PolyMatrix& mt = *forms[f];
          const Identity& id = ids[size_t(f)][idx];
          Laurent lhs = id.cp * mt.at(rx, cpart) + id.cz * mt.at(rx, cz) +
                        id.cs * mt.at(rsx, cz);
          if (!lhs.is_zero())
            bad.push_back(std::string(names[f]) + " recursion failed at x=" +
                          g.word_str(x) + " z=" + g.word_str(z) +
                          " s=" + g.system().letter(s));
        }
      }
    }
  }
  return bad;
}

std::vector<std::string> validate_lambda_recursions(const InvModule& m,
                                                    const ModuleTables& t,
                                                    size_t row_begin,
                                                    size_t row_end) {
  const cox::GroupTable& g = m.table();
  const int rank = g.system().rank();
  const Laurent ui = Laurent::u(-1);
  const Laurent ui2 = Laurent::u(-2);
  const Laurent one(1);
  std::vector<std::string> bad;

  row_end = std::min(row_end, t.xs.size());
  for (size_t row = row_begin; row < row_end; ++row) {
    const cox::ElemId x = t.xs[row];
    if (x == 0) continue;
    for (cox::GenIdx s = 0; s < rank; ++s) {
      if (!g.left_descent(s, x)) continue;
      const cox::ElemId sx = g.left(s, x);
      const int rx = t.row(x), rsx = t.row(sx);
      for (cox::ElemId z : t.zs) {
        GenStep step;
        try {
          step = classify(g, s, z);
        } catch (const cox::BallExceeded&) {
          continue;
        }
        const int cz = t.col(z);
        const int cpart = t.col(step.partner);
        if (cpart < 0) continue;
        Laurent rhs;
        switch (step.kind) {
          case GenCase::kCommuteDown:
            rhs = t.lambda.at(rx, cpart) - ui * t.lambda.at(rsx, cz);
            break;
          case GenCase::kCommuteUp:
            rhs = ui * t.lambda.at(rsx, cz) +
                  (one - ui2) * t.lambda.at(rsx, cpart);
            break;
          case GenCase::kTwistUp:
            rhs = ui2 * t.lambda.at(rsx, cpart);
            break;
          case GenCase::kTwistDown:
            rhs = t.lambda.at(rsx, cpart) + (one - ui2) * t.lambda.at(rsx, cz);
            break;
        }
        if (t.lambda.at(rx, cz) != rhs)
          bad.push_back("divided-table recursion failed at x=" +
                        g.word_str(x) + " z=" + g.word_str(z) +
                        " s=" + g.system().letter(s));
      }
    }
  }
  return bad;
}

std::vector<std::string> lambda_bar_symmetry_violations(
    const InvModule& m, const ModuleTables& t) {
  const cox::GroupTable& g = m.table();
  std::vector<std::string> bad;
  for (size_t row = 0; row < t.xs.size(); ++row) {
    const cox::ElemId x = t.xs[row];
    for (size_t col = 0; col < t.zs.size(); ++col) {
      const cox::ElemId z = t.zs[col];
      const Laurent& lam = t.lambda.at(int(row), int(col));
      if (lam.is_zero()) continue;
      const int k = g.length(x) - (g.length(z) - m.phi(z)) / 2;
      const Laurent rhs =
          Laurent::term(k % 2 == 0 ? 1 : -1, 2 * k) * lam;
      if (lam.bar() != rhs)
        bad.push_back("divided-table symmetry failed at x=" + g.word_str(x) +
                      " z=" + g.word_str(z));
    }
  }
  return bad;
}

std::vector<std::string> sign_identity_violations(const InvModule& m,
                                                  size_t begin, size_t end) {
  const cox::GroupTable& g = m.table();
  const int rank = g.system().rank();
  const Laurent u = Laurent::u(1);
  const Laurent u2 = Laurent::u(2);
  const Laurent one(1);
  std::vector<std::string> bad;
  end = std::min(end, m.involutions().size());
  for (size_t wi = begin; wi < end; ++wi) {
    const cox::ElemId w = m.involutions()[wi];
    for (cox::GenIdx s = 0; s < rank; ++s) {
      GenStep step;
      try {
        step = classify(g, s, w);
      } catch (const cox::BallExceeded&) {
        continue;
      }
      const Laurent ew(m.eps(w));
      const Laurent ep(m.eps(step.partner));
      Laurent rhs;
      switch (step.kind) {
        case GenCase::kCommuteUp:
          rhs = u * ew + (u + one) * ep;
          break;
        case GenCase::kCommuteDown:
          rhs = (u2 - u - one) * ew + (u2 - u) * ep;
          break;
        case GenCase::kTwistUp:
          rhs = ep;
          break;
        case GenCase::kTwistDown:
          rhs = (u2 - one) * ew + u2 * ep;
          break;
      }
      if (-ew != rhs)
        bad.push_back("sign identity failed at w=" + g.word_str(w) +
                      " s=" + g.system().letter(s));
    }
  }
  return bad;
}

}  // namespace invmod
