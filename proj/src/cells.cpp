#include "cells.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kl {
namespace {

using cox::GenIdx;
using hecke::HeckeElt;
using laurent::Int;

// Element in the normalized basis Tt_w = u^{-l(w)} T_w.
using TMap = std::map<ElemId, Laurent>;

void map_add(TMap& dst, ElemId w, const Laurent& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = dst.try_emplace(w, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) dst.erase(it);
  }
}

void add_scaled(TMap& dst, const TMap& src, const Laurent& f) {
  if (f.is_zero()) return;
  for (const auto& [w, c] : src) map_add(dst, w, c * f);
}

// Tt_s * e and e * Tt_s:
//   Tt_s Tt_w = Tt_{sw}                      if l(sw) > l(w),
//   Tt_s Tt_w = Tt_{sw} + (u - u^-1) Tt_w    if l(sw) < l(w).
TMap tmul_gen_left(const cox::GroupTable& t, GenIdx s, const TMap& e) {
  const Laurent edge = Laurent::u(1) - Laurent::u(-1);
  TMap out;
  for (const auto& [w, c] : e) {
    ElemId sw = t.left(s, w);
    map_add(out, sw, c);
    if (t.length(sw) < t.length(w)) map_add(out, w, c * edge);
  }
  return out;
}

TMap tmul_gen_right(const cox::GroupTable& t, const TMap& e, GenIdx s) {
  const Laurent edge = Laurent::u(1) - Laurent::u(-1);
  TMap out;
  for (const auto& [w, c] : e) {
    ElemId ws = t.right(w, s);
    map_add(out, ws, c);
    if (t.length(ws) < t.length(w)) map_add(out, w, c * edge);
  }
  return out;
}

// x * y, both in the normalized basis.
TMap tmul(const cox::GroupTable& t, const TMap& x, const TMap& y) {
  TMap out;
  for (const auto& [v, q] : y) {
    TMap cur = x;
    for (GenIdx s : t.word(v)) cur = tmul_gen_right(t, cur, s);
    add_scaled(out, cur, q);
  }
  return out;
}

// --- strongly connected components (Kosaraju), canonically ordered --------

std::vector<std::vector<ElemId>> scc(
    const std::vector<std::vector<ElemId>>& adj, std::vector<int>& comp_of) {
  const size_t n = adj.size();
  std::vector<std::vector<ElemId>> radj(n);
  for (size_t v = 0; v < n; ++v)
    for (ElemId w : adj[v]) radj[size_t(w)].push_back(ElemId(v));

  std::vector<char> seen(n, 0);
  std::vector<ElemId> order;
  order.reserve(n);
  for (size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    // iterative post-order
    std::vector<std::pair<ElemId, size_t>> stack{{ElemId(root), 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < adj[size_t(v)].size()) {
        ElemId w = adj[size_t(v)][i++];
        if (!seen[size_t(w)]) {
          seen[size_t(w)] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  comp_of.assign(n, -1);
  std::vector<std::vector<ElemId>> comps;
  for (size_t i = n; i-- > 0;) {
    ElemId root = order[i];
    if (comp_of[size_t(root)] >= 0) continue;
    int c = int(comps.size());
    comps.emplace_back();
    std::vector<ElemId> stack{root};
    comp_of[size_t(root)] = c;
    while (!stack.empty()) {
      ElemId v = stack.back();
      stack.pop_back();
      comps[size_t(c)].push_back(v);
      for (ElemId w : radj[size_t(v)])
        if (comp_of[size_t(w)] < 0) {
          comp_of[size_t(w)] = c;
          stack.push_back(w);
        }
    }
  }
  // canonical: members ascending, components ordered by least member
  for (auto& comp : comps) std::sort(comp.begin(), comp.end());
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (size_t c = 0; c < comps.size(); ++c)
    for (ElemId v : comps[c]) comp_of[size_t(v)] = int(c);
  return comps;
}

// --- exact rational linear algebra ----------------------------------------

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref_rows(std::vector<std::vector<Rat>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = m[row][col];
    for (size_t k = col; k < cols; ++k) m[row][k] /= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (size_t k = col; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(int(col));
    ++row;
  }
  m.resize(pivots.size());
  return pivots;
}

// Nullspace basis of the row system m (solutions x of m x = 0).
std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> m,
                                        size_t cols) {
  std::vector<int> pivots = rref_rows(m);
  std::vector<char> is_pivot(cols, 0);
  for (int p : pivots) is_pivot[size_t(p)] = 1;
  std::vector<std::vector<Rat>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[size_t(pivots[i])] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Coordinates of v against rows in reduced echelon form; throws when v is
// outside their span.
std::vector<Rat> express(const std::vector<std::vector<Rat>>& rows,
                         const std::vector<int>& pivots,
                         const std::vector<Rat>& v) {
  std::vector<Rat> coords(rows.size());
  std::vector<Rat> rest = v;
  for (size_t i = 0; i < rows.size(); ++i) {
    coords[i] = rest[size_t(pivots[i])];
    if (coords[i] == 0) continue;
    for (size_t k = 0; k < rest.size(); ++k) rest[k] -= coords[i] * rows[i][k];
  }
  for (const Rat& x : rest)
    if (x != 0) throw std::logic_error("vector left the subspace");
  return coords;
}

// --- exact fractions over Z[u, u^-1] ---------------------------------------

Laurent shift_pow(const Laurent& x, int k) {
  return k == 0 ? x : Laurent::u(k) * x;
}

Int content(const Laurent& x) {
  Int g = 0;
  for (const auto& [e, c] : x.terms()) g = boost::multiprecision::gcd(g, abs(c));
  return g;
}

Laurent divide_int(const Laurent& x, const Int& k) {
  Laurent r;
  for (const auto& [e, c] : x.terms()) r.add_term(e, c / k);
  return r;
}

// Primitive part with positive leading coefficient.
Laurent primitive(const Laurent& x) {
  Int c = content(x);
  if (x.coeff(x.max_exp()) < 0) c = -c;
  return divide_int(x, c);
}

// Pseudo-remainder of a by b (both nonzero, nonnegative exponents).
Laurent prem(Laurent a, const Laurent& b) {
  const int db = b.max_exp();
  const Int lb = b.coeff(db);
  while (!a.is_zero() && a.max_exp() >= db) {
    const int da = a.max_exp();
    const Int la = a.coeff(da);
    a = lb * a - la * shift_pow(b, da - db);
  }
  return a;
}

// Full gcd over Z[u] (content times primitive gcd), positive leading
// coefficient; both arguments nonzero with min_exp >= 0.
Laurent poly_gcd(Laurent a, Laurent b) {
  const Int cg = boost::multiprecision::gcd(content(a), content(b));
  a = primitive(a);
  b = primitive(b);
  while (!b.is_zero()) {
    Laurent r = prem(a, b);
    a = std::move(b);
    b = r.is_zero() ? Laurent() : primitive(r);
  }
  return cg * a;
}

// Reduced fraction num/den of Laurent polynomials.
struct PF {
  Laurent num;
  Laurent den = Laurent(1);
  bool is_zero() const { return num.is_zero(); }
};

PF pf_make(const Laurent& n, const Laurent& d) {
  if (d.is_zero()) throw std::logic_error("zero denominator");
  if (n.is_zero()) return {};
  const int en = n.min_exp(), ed = d.min_exp();
  Laurent np = shift_pow(n, -en), dp = shift_pow(d, -ed);
  Laurent g = poly_gcd(np, dp);
  np = np.divide_exact(g);
  dp = dp.divide_exact(g);
  if (dp.coeff(dp.max_exp()) < 0) {
    np = -np;
    dp = -dp;
  }
  return {shift_pow(np, en - ed), dp};
}

PF pf_add(const PF& a, const PF& b) {
  return pf_make(a.num * b.den + b.num * a.den, a.den * b.den);
}
PF pf_sub(const PF& a, const PF& b) {
  return pf_make(a.num * b.den - b.num * a.den, a.den * b.den);
}
PF pf_mul(const PF& a, const PF& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return pf_make(a.num * b.num, a.den * b.den);
}
PF pf_div(const PF& a, const PF& b) {
  if (b.is_zero()) throw std::logic_error("division by zero fraction");
  if (a.is_zero()) return {};
  return pf_make(a.num * b.den, a.den * b.num);
}

// Fraction-free forward elimination (Bareiss) on an n x cols matrix whose
// first n columns are the system; false when the system is singular.
bool bareiss_forward(std::vector<std::vector<Laurent>>& m, size_t n) {
  const size_t cols = m.empty() ? 0 : m[0].size();
  Laurent prev(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return false;
    std::swap(m[c], m[piv]);
    for (size_t r = c + 1; r < n; ++r) {
      for (size_t k = c + 1; k < cols; ++k)
        m[r][k] = (m[c][c] * m[r][k] - m[r][c] * m[c][k]).divide_exact(prev);
      m[r][c] = Laurent();
    }
    prev = m[c][c];
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// KLData

KLData::KLData(const cox::GroupTable& t, size_t limit, size_t full_limit)
    : t_(&t), n_(t.size()) {
  if (!t.complete())
    throw std::invalid_argument(
        "canonical-basis data requires a fully enumerated finite group");
  if (n_ > limit)
    throw cox::LimitExceeded("group order " + std::to_string(n_) +
                             " exceeds the configured limit " +
                             std::to_string(limit));

  // Canonical basis by the generator recursion: for w = s v with l(w) =
  // l(v) + 1,  c_s c_v = c_w + sum over y < v with sy < y of mu(y,v) c_y.
  c_.resize(n_);
  c_[0].emplace(0, Laurent(1));
  for (ElemId w = 1; w < ElemId(n_); ++w) {
    const GenIdx s = t.word(w).front();
    const ElemId v = t.left(s, w);
    TMap prod = tmul_gen_left(t, s, c_[v]);
    add_scaled(prod, c_[v], Laurent::u(-1));  // c_s = Tt_s + u^-1
    std::vector<std::pair<ElemId, Int>> subs;
    for (const auto& [y, py] : c_[v]) {
      Int m = py.coeff(-1);
      if (m != 0 && t.left_descent(s, y)) subs.emplace_back(y, m);
    }
    for (const auto& [y, m] : subs) add_scaled(prod, c_[y], Laurent(-m));
    // triangularity with top coefficient 1, all lower ones in u^-1 Z[u^-1]
    auto top = prod.find(w);
    if (top == prod.end() || !top->second.is_one())
      throw std::logic_error("canonical basis recursion lost its top term");
    for (const auto& [y, py] : prod)
      if (y != w && (y > w || py.max_exp() > -1))
        throw std::logic_error("canonical basis coefficient out of range");
    c_[size_t(w)] = std::move(prod);
  }

  // Inverse conversion Tt_w = sum_y s(y,w) c_y.
  s_.resize(n_);
  for (ElemId w = 0; w < ElemId(n_); ++w) {
    TMap out;
    out.emplace(w, Laurent(1));
    for (const auto& [y, py] : c_[size_t(w)]) {
      if (y == w) continue;
      add_scaled(out, s_[size_t(y)], -py);
    }
    s_[size_t(w)] = std::move(out);
  }

  // Cells from the generator multiplication graphs.
  std::vector<std::vector<ElemId>> ladj(n_), radj(n_), badj(n_);
  const int rank = t.system().rank();
  for (ElemId y = 0; y < ElemId(n_); ++y) {
    for (GenIdx s = 0; s < rank; ++s) {
      TMap lp = tmul_gen_left(t, s, c_[size_t(y)]);
      add_scaled(lp, c_[size_t(y)], Laurent::u(-1));
      for (const auto& [z, hz] : to_c_basis(std::move(lp)))
        ladj[size_t(y)].push_back(z);
      TMap rp = tmul_gen_right(t, c_[size_t(y)], s);
      add_scaled(rp, c_[size_t(y)], Laurent::u(-1));
      for (const auto& [z, hz] : to_c_basis(std::move(rp)))
        radj[size_t(y)].push_back(z);
    }
    auto dedupe = [](std::vector<ElemId>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(ladj[size_t(y)]);
    dedupe(radj[size_t(y)]);
    badj[size_t(y)] = ladj[size_t(y)];
    badj[size_t(y)].insert(badj[size_t(y)].end(), radj[size_t(y)].begin(),
                           radj[size_t(y)].end());
    dedupe(badj[size_t(y)]);
  }
  left_cells_ = scc(ladj, left_of_);
  right_cells_ = scc(radj, right_of_);
  two_cells_ = scc(badj, two_of_);

  if (n_ > full_limit) return;
  full_ = true;

  // Full structure-constant table and the a-function.
  h_.assign(n_, std::vector<TMap>(n_));
  a_.assign(n_, 0);
  for (ElemId x = 0; x < ElemId(n_); ++x)
    for (ElemId y = 0; y < ElemId(n_); ++y) {
      h_[size_t(x)][size_t(y)] =
          to_c_basis(tmul(t, c_[size_t(x)], c_[size_t(y)]));
      for (const auto& [z, hz] : h_[size_t(x)][size_t(y)])
        a_[size_t(z)] = std::max(a_[size_t(z)], hz.max_exp());
    }

  // delta(z) from the leading term of p(1,z) and the distinguished set.
  delta_.assign(n_, 0);
  for (ElemId z = 0; z < ElemId(n_); ++z) {
    const Laurent p1z = p(0, z);
    if (p1z.is_zero())
      throw std::logic_error("p(1,z) vanished for z = " + t.word_str(z));
    delta_[size_t(z)] = -p1z.max_exp();
    if (a_[size_t(z)] == delta_[size_t(z)]) dist_.push_back(z);
  }
  cell_dist_.assign(left_cells_.size(), cox::npos);
  for (ElemId d : dist_) {
    ElemId& slot = cell_dist_[size_t(left_of_[size_t(d)])];
    if (slot != cox::npos)
      throw std::logic_error("left cell with two distinguished involutions");
    slot = d;
  }
  for (size_t i = 0; i < cell_dist_.size(); ++i)
    if (cell_dist_[i] == cox::npos)
      throw std::logic_error("left cell without a distinguished involution");

  // Leading coefficients: t_x t_y = sum_z gtilde(x,y,z) t_z with
  // gtilde(x,y,z) the u^{a(z)}-coefficient of h(x,y,z).
  jrow_.assign(n_ * n_, {});
  for (ElemId x = 0; x < ElemId(n_); ++x)
    for (ElemId y = 0; y < ElemId(n_); ++y) {
      auto& row = jrow_[size_t(x) * n_ + y];
      for (const auto& [z, hz] : h_[size_t(x)][size_t(y)]) {
        Int g = hz.coeff(a_[size_t(z)]);
        if (g != 0) row.emplace_back(z, g.convert_to<long>());
      }
    }
}

std::map<ElemId, Laurent> KLData::to_c_basis(TMap e) const {
  std::map<ElemId, Laurent> out;
  while (!e.empty()) {
    const auto it = std::prev(e.end());
    const ElemId w = it->first;
    const Laurent f = it->second;
    out.emplace(w, f);
    add_scaled(e, c_[size_t(w)], -f);
  }
  return out;
}

Laurent KLData::p(ElemId y, ElemId w) const {
  const auto& row = c_[size_t(w)];
  auto it = row.find(y);
  return it == row.end() ? Laurent() : it->second;
}

long KLData::mu(ElemId y, ElemId w) const {
  return p(y, w).coeff(-1).convert_to<long>();
}

void KLData::require_full() const {
  if (!full_)
    throw std::logic_error(
        "structure constants were not computed for this group size");
}

const std::map<ElemId, Laurent>& KLData::h_row(ElemId x, ElemId y) const {
  require_full();
  return h_[size_t(x)][size_t(y)];
}

Laurent KLData::h(ElemId x, ElemId y, ElemId z) const {
  const auto& row = h_row(x, y);
  auto it = row.find(z);
  return it == row.end() ? Laurent() : it->second;
}

int KLData::a(ElemId z) const {
  require_full();
  return a_[size_t(z)];
}

int KLData::delta(ElemId z) const {
  require_full();
  return delta_[size_t(z)];
}

long KLData::gamma(ElemId x, ElemId y, ElemId z) const {
  require_full();
  const ElemId zi = t_->inverse(z);
  return h(x, y, zi).coeff(a_[size_t(zi)]).convert_to<long>();
}

const std::vector<ElemId>& KLData::distinguished() const {
  require_full();
  return dist_;
}

bool KLData::is_distinguished(ElemId z) const {
  require_full();
  return std::binary_search(dist_.begin(), dist_.end(), z);
}

ElemId KLData::left_cell_distinguished(int i) const {
  require_full();
  return cell_dist_[size_t(i)];
}

JQ KLData::jmul(const JQ& a, const JQ& b) const {
  require_full();
  JQ out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b)
      for (const auto& [z, g] : jrow_[size_t(x) * n_ + y]) {
        Rat v = cx * cy * g;
        auto [it, fresh] = out.try_emplace(z, v);
        if (!fresh) {
          it->second += v;
          if (it->second == 0) out.erase(it);
        }
      }
  return out;
}

JL KLData::jmul(const JL& a, const JL& b) const {
  require_full();
  JL out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      const Laurent f = cx * cy;
      if (f.is_zero()) continue;
      for (const auto& [z, g] : jrow_[size_t(x) * n_ + y])
        map_add(out, z, Int(g) * f);
    }
  return out;
}

JQ KLData::junit() const {
  require_full();
  JQ out;
  for (ElemId d : dist_) out.emplace(d, Rat(1));
  return out;
}

JL KLData::psi_c(ElemId x) const {
  require_full();
  JL out;
  for (ElemId d : dist_) {
    for (const auto& [z, hz] : h_[size_t(x)][size_t(d)])
      if (cell_dist_[size_t(left_of_[size_t(z)])] == d) map_add(out, z, hz);
  }
  return out;
}

JL KLData::psi(const hecke::HeckeElt& elt) const {
  require_full();
  std::map<ElemId, Laurent> cvec;
  for (const auto& [w, coeff] : elt.terms()) {
    const Laurent f = coeff * Laurent::u(t_->length(w));
    for (const auto& [y, syw] : s_[size_t(w)]) map_add(cvec, y, f * syw);
  }
  JL out;
  for (const auto& [y, cy] : cvec) {
    for (const auto& [z, hz] : psi_c(y)) map_add(out, z, cy * hz);
  }
  return out;
}

bool KLData::psi_invertible() const {
  require_full();
  std::vector<std::vector<Laurent>> m(n_, std::vector<Laurent>(n_));
  for (ElemId y = 0; y < ElemId(n_); ++y)
    for (const auto& [z, hz] : psi_c(y)) m[size_t(z)][size_t(y)] = hz;
  for (auto& row : m) {
    int sh = 0;
    for (const auto& e : row)
      if (!e.is_zero()) sh = std::min(sh, e.min_exp());
    if (sh < 0)
      for (auto& e : row) e = shift_pow(e, -sh);
  }
  return bareiss_forward(m, n_);
}

std::vector<std::vector<std::pair<Laurent, Laurent>>> KLData::psi_solve(
    const std::vector<JQ>& targets) const {
  require_full();
  const size_t k = targets.size();
  std::vector<std::vector<Laurent>> m(n_, std::vector<Laurent>(n_ + k));
  for (ElemId y = 0; y < ElemId(n_); ++y)
    for (const auto& [z, hz] : psi_c(y)) m[size_t(z)][size_t(y)] = hz;
  // clear rational denominators per target, remember the scale
  std::vector<Int> scale(k, 1);
  for (size_t tgt = 0; tgt < k; ++tgt) {
    Int d = 1;
    for (const auto& [z, v] : targets[tgt])
      d = boost::multiprecision::lcm(d, denominator(v));
    scale[tgt] = d;
    for (const auto& [z, v] : targets[tgt])
      m[size_t(z)][n_ + tgt] =
          Laurent(Int(numerator(v) * (d / denominator(v))));
  }
  // shift each row into Z[u]
  for (auto& row : m) {
    int sh = 0;
    for (const auto& e : row)
      if (!e.is_zero()) sh = std::min(sh, e.min_exp());
    if (sh < 0)
      for (auto& e : row) e = shift_pow(e, -sh);
  }
  if (!bareiss_forward(m, n_))
    throw std::logic_error("the homomorphism matrix is singular");
  // back-substitution over reduced fractions
  std::vector<std::vector<PF>> x(n_, std::vector<PF>(k));
  for (size_t i = n_; i-- > 0;) {
    for (size_t tgt = 0; tgt < k; ++tgt) {
      PF acc{m[i][n_ + tgt], Laurent(1)};
      for (size_t j = i + 1; j < n_; ++j) {
        if (m[i][j].is_zero() || x[j][tgt].is_zero()) continue;
        acc = pf_sub(acc, pf_mul(PF{m[i][j], Laurent(1)}, x[j][tgt]));
      }
      x[i][tgt] = pf_div(acc, PF{m[i][i], Laurent(1)});
    }
  }
  std::vector<std::vector<std::pair<Laurent, Laurent>>> out(
      k, std::vector<std::pair<Laurent, Laurent>>(n_));
  for (size_t tgt = 0; tgt < k; ++tgt)
    for (size_t y = 0; y < n_; ++y) {
      PF v = pf_div(x[y][tgt], PF{Laurent(scale[tgt]), Laurent(1)});
      out[tgt][y] = {v.num, v.den};
    }
  return out;
}

// ---------------------------------------------------------------------------
// Leading-term expansion over left cells

LeadingTermReport leading_term_check(const KLData& kl) {
  const cox::GroupTable& t = kl.table();
  if (!t.system().star().is_identity())
    throw std::invalid_argument(
        "the leading-term expansion is defined for the identity diagram "
        "involution");
  LeadingTermReport rep;
  const JL psi_x = kl.psi(hecke::star_fixed_sum(t));
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.detail = std::move(msg);
    return rep;
  };
  // S_y = sum over w of s(y,w)
  std::map<ElemId, Laurent> big_s;
  for (ElemId w = 0; w < t.size(); ++w)
    for (const auto& [y, v] : kl.t_in_c(w)) map_add(big_s, y, v);

  for (int ci = 0; ci < kl.num_left_cells(); ++ci) {
    const std::vector<ElemId>& cell = kl.left_cell(ci);
    const ElemId d = kl.left_cell_distinguished(ci);
    const int az = kl.a(d);
    for (ElemId z : cell)
      if (kl.a(z) != az)
        return fail("a-function is not constant on a left cell");
    // r_z = sum_y S_y h(y, d, z), monic of degree a
    std::map<ElemId, Laurent> r;
    for (const auto& [y, sy] : big_s) {
      const auto& row = kl.h_row(y, d);
      for (ElemId z : cell) {
        auto it = row.find(z);
        if (it != row.end()) map_add(r, z, sy * it->second);
      }
    }
    for (ElemId z : cell) {
      auto it = r.find(z);
      if (it == r.end() || it->second.max_exp() != az ||
          it->second.coeff(az) != 1)
        return fail("leading coefficient at " + t.word_str(z) +
                    " is not monic of degree " + std::to_string(az));
    }
    // psi(X) t_xi = sum over z in the cell of r_z (t_z t_xi)
    for (ElemId zz : cell) {
      const ElemId xi = t.inverse(zz);
      JL lhs = kl.jmul(psi_x, JL{{xi, Laurent(1)}});
      JL rhs;
      for (ElemId z : cell) {
        JL prod = kl.jmul(JL{{z, r[z]}}, JL{{xi, Laurent(1)}});
        for (const auto& [w, v] : prod) map_add(rhs, w, v);
      }
      if (lhs != rhs)
        return fail("expansion mismatch on the cell of " + t.word_str(zz));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The ideal acting on the twisted-involution module

namespace {

std::vector<Rat> jq_to_vec(const JQ& m, size_t n) {
  std::vector<Rat> v(n, Rat(0));
  for (const auto& [z, c] : m) v[size_t(z)] = c;
  return v;
}

JQ vec_to_jq(const std::vector<Rat>& v) {
  JQ m;
  for (size_t z = 0; z < v.size(); ++z)
    if (v[z] != 0) m.emplace(ElemId(z), v[z]);
  return m;
}

// Scale a rational vector to integer entries (primitive direction).
std::vector<Rat> integer_scaled(const std::vector<Rat>& v) {
  Int d = 1;
  for (const Rat& x : v) d = boost::multiprecision::lcm(d, denominator(x));
  std::vector<Rat> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rat(d);
  return out;
}

}  // namespace

JcmResult jcm_ideal(const KLData& kl, const invmod::InvModule& m) {
  const cox::GroupTable& t = kl.table();
  if (&m.table() != &t)
    throw std::invalid_argument("module and basis data use different tables");
  if (!t.system().star().is_identity())
    throw std::invalid_argument(
        "the acting ideal is defined for the identity diagram involution");
  const size_t n = kl.size();

  // Center of the ring: vectors commuting with every basis element.
  std::vector<std::vector<Rat>> constraints;
  for (ElemId a = 0; a < ElemId(n); ++a) {
    std::vector<JQ> left(n), right(n);
    for (ElemId y = 0; y < ElemId(n); ++y) {
      left[y] = kl.jmul(JQ{{a, Rat(1)}}, JQ{{y, Rat(1)}});
      right[y] = kl.jmul(JQ{{y, Rat(1)}}, JQ{{a, Rat(1)}});
    }
    for (ElemId w = 0; w < ElemId(n); ++w) {
      std::vector<Rat> row(n, Rat(0));
      bool nz = false;
      for (ElemId y = 0; y < ElemId(n); ++y) {
        auto itl = left[y].find(w);
        auto itr = right[y].find(w);
        Rat v = (itl == left[y].end() ? Rat(0) : itl->second) -
                (itr == right[y].end() ? Rat(0) : itr->second);
        if (v != 0) {
          row[y] = v;
          nz = true;
        }
      }
      if (nz) constraints.push_back(std::move(row));
    }
  }
  std::vector<std::vector<Rat>> center = nullspace(std::move(constraints), n);
  for (auto& z : center) z = integer_scaled(z);

  // Split the center into one-dimensional joint eigenspaces of the
  // multiplication operators by its own (integer) basis vectors.
  struct Space {
    std::vector<std::vector<Rat>> rows;  // reduced echelon basis, t-coords
    std::vector<int> pivots;
  };
  std::vector<Space> spaces;
  {
    Space all;
    all.rows = center;
    all.pivots = rref_rows(all.rows);
    spaces.push_back(std::move(all));
  }
  for (const auto& zvec : center) {
    bool done = true;
    for (const Space& s : spaces)
      if (s.rows.size() > 1) done = false;
    if (done) break;
    const JQ zq = vec_to_jq(zvec);
    // spectral bound: max column norm of multiplication on the full basis
    Rat bound(0);
    for (ElemId j = 0; j < ElemId(n); ++j) {
      Rat colsum(0);
      for (const auto& [w, v] : kl.jmul(zq, JQ{{j, Rat(1)}}))
        colsum += abs(v);
      bound = std::max(bound, colsum);
    }
    const long B = numerator(bound).convert_to<long>() /
                       denominator(bound).convert_to<long>() +
                   1;
    std::vector<Space> next;
    for (Space& s : spaces) {
      const size_t k = s.rows.size();
      if (k == 1) {
        next.push_back(std::move(s));
        continue;
      }
      // restricted operator in the echelon basis
      std::vector<std::vector<Rat>> r(k, std::vector<Rat>(k));
      for (size_t j = 0; j < k; ++j) {
        std::vector<Rat> img =
            jq_to_vec(kl.jmul(zq, vec_to_jq(s.rows[j])), n);
        std::vector<Rat> coords = express(s.rows, s.pivots, img);
        for (size_t i = 0; i < k; ++i) r[i][j] = coords[i];
      }
      size_t found = 0;
      for (long lam = -B; lam <= B; ++lam) {
        std::vector<std::vector<Rat>> shifted(k, std::vector<Rat>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j)
            shifted[i][j] = r[i][j] - (i == j ? Rat(lam) : Rat(0));
        std::vector<std::vector<Rat>> ker = nullspace(shifted, k);
        if (ker.empty()) continue;
        Space piece;
        for (const auto& coords : ker) {
          std::vector<Rat> v(n, Rat(0));
          for (size_t j = 0; j < k; ++j)
            for (size_t c = 0; c < n; ++c) v[c] += coords[j] * s.rows[j][c];
          piece.rows.push_back(std::move(v));
        }
        found += piece.rows.size();
        piece.pivots = rref_rows(piece.rows);
        next.push_back(std::move(piece));
      }
      if (found != k)
        throw std::logic_error(
            "a central multiplication operator is not diagonalizable over "
            "the rationals");
    }
    spaces = std::move(next);
  }
  for (const Space& s : spaces)
    if (s.rows.size() != 1)
      throw std::logic_error(
          "the center did not split into one-dimensional joint eigenspaces");

  // Idempotents e = v / c from v^2 = c v, canonically ordered.
  std::vector<std::vector<Rat>> lines;
  for (const Space& s : spaces) lines.push_back(s.rows[0]);
  std::sort(lines.begin(), lines.end());
  JcmResult res;
  for (const auto& v : lines) {
    const JQ vq = vec_to_jq(v);
    const JQ v2 = kl.jmul(vq, vq);
    Rat c(0);
    for (const auto& [z, val] : vq) {
      auto it = v2.find(z);
      if (it != v2.end()) {
        c = it->second / val;
        break;
      }
    }
    if (c == 0)
      throw std::logic_error("a central eigenvector squares to zero");
    JQ e;
    for (const auto& [z, val] : vq) e.emplace(z, val / c);
    if (kl.jmul(e, e) != e)
      throw std::logic_error("central eigenvector did not normalize to an "
                             "idempotent");
    res.idempotents.push_back(std::move(e));
  }
  // Validation: the idempotents are orthogonal and sum to the unit.
  JQ total;
  for (const auto& e : res.idempotents)
    for (const auto& [z, v] : e) {
      auto [it, fresh] = total.try_emplace(z, v);
      if (!fresh) {
        it->second += v;
        if (it->second == 0) total.erase(it);
      }
    }
  if (total != kl.junit())
    throw std::logic_error("central idempotents do not sum to the unit");
  for (size_t i = 0; i < res.idempotents.size(); ++i)
    for (size_t j = i + 1; j < res.idempotents.size(); ++j)
      if (!kl.jmul(res.idempotents[i], res.idempotents[j]).empty())
        throw std::logic_error("central idempotents are not orthogonal");

  // Preimages under the homomorphism, exactly.
  const auto sols = kl.psi_solve(res.idempotents);

  // Action matrices of the canonical basis on the module.
  const auto& invs = m.involutions();
  const size_t q = invs.size();
  std::vector<int> ipos(n, -1);
  for (size_t i = 0; i < q; ++i) ipos[size_t(invs[i])] = int(i);
  // columns of T_x on the module, then of c_x
  std::vector<std::vector<std::vector<Laurent>>> cmat(
      n, std::vector<std::vector<Laurent>>(q, std::vector<Laurent>(q)));
  for (ElemId x = 0; x < ElemId(n); ++x) {
    std::vector<std::vector<Laurent>> tmat(q, std::vector<Laurent>(q));
    for (size_t j = 0; j < q; ++j) {
      invmod::Elt img = m.act(x, invmod::Elt{{invs[j], Laurent(1)}});
      for (const auto& [z, v] : img) tmat[size_t(ipos[size_t(z)])][j] = v;
    }
    // accumulate this T_x into every c_w with p(x,w) != 0
    for (ElemId w = x; w < ElemId(n); ++w) {
      const Laurent pxw = kl.p(x, w);
      if (pxw.is_zero()) continue;
      const Laurent f = pxw * Laurent::u(-t.length(x));
      for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j)
          if (!tmat[i][j].is_zero()) {
            cmat[size_t(w)][i][j] += f * tmat[i][j];
          }
    }
  }

  // Decide, per idempotent, whether its preimage annihilates the module.
  for (size_t ei = 0; ei < res.idempotents.size(); ++ei) {
    bool nonzero = false;
    for (size_t i = 0; i < q && !nonzero; ++i)
      for (size_t j = 0; j < q && !nonzero; ++j) {
        PF acc;
        for (size_t y = 0; y < n; ++y) {
          const auto& [num, den] = sols[ei][y];
          if (num.is_zero() || cmat[y][i][j].is_zero()) continue;
          acc = pf_add(acc, pf_make(num * cmat[y][i][j], den));
        }
        if (!acc.is_zero()) nonzero = true;
      }
    res.acts_nonzero.push_back(nonzero ? 1 : 0);
  }

  // Block dimensions and the basis of the acting ideal.
  std::vector<std::vector<Rat>> active_rows;
  int total_dim = 0;
  for (size_t ei = 0; ei < res.idempotents.size(); ++ei) {
    std::vector<std::vector<Rat>> rows;
    for (ElemId z = 0; z < ElemId(n); ++z) {
      JQ prod = kl.jmul(res.idempotents[ei], JQ{{z, Rat(1)}});
      if (!prod.empty()) rows.push_back(jq_to_vec(prod, n));
    }
    rref_rows(rows);
    res.block_dims.push_back(int(rows.size()));
    total_dim += int(rows.size());
    if (res.acts_nonzero[ei])
      active_rows.insert(active_rows.end(), rows.begin(), rows.end());
  }
  if (total_dim != int(n))
    throw std::logic_error("block dimensions do not add up to the rank");
  rref_rows(active_rows);
  res.basis = std::move(active_rows);
  return res;
}

bool jcm_contains(const JcmResult& r, const JQ& elt, size_t n) {
  std::vector<std::vector<Rat>> rows = r.basis;
  rows.push_back(jq_to_vec(elt, n));
  return int(rref_rows(rows).size()) == r.dim();
}

std::vector<CellPairElement> cell_pair_elements(const KLData& kl) {
  const cox::GroupTable& t = kl.table();
  std::vector<CellPairElement> out;
  for (int i = 0; i < kl.num_left_cells(); ++i)
    for (int j = 0; j < kl.num_left_cells(); ++j) {
      JQ elt;
      for (ElemId z : kl.left_cell(i))
        if (kl.left_cell_of(t.inverse(z)) == j) elt.emplace(z, Rat(1));
      if (!elt.empty()) out.push_back(CellPairElement{i, j, std::move(elt)});
    }
  return out;
}

ReferenceBasisReport g2_reference_basis(const KLData& kl, const JcmResult& r) {
  const cox::GroupTable& t = kl.table();
  ReferenceBasisReport rep;
  const cox::CoxeterMatrix& cm = t.system().matrix();
  if (cm.rank() != 2 || cm.m(0, 1) != 6 || !t.complete()) {
    rep.detail = "defined only for the full rank-2 group with bond order 6";
    return rep;
  }
  rep.applicable = true;

  const std::vector<std::vector<std::vector<cox::GenIdx>>> words = {
      {{}},
      {{0}, {0, 1, 0, 1, 0}},
      {{0, 1, 0}},
      {{1}, {1, 0, 1, 0, 1}},
      {{1, 0, 1}},
      {{0, 1}, {0, 1, 0, 1}},
      {{1, 0}, {1, 0, 1, 0}},
      {{0, 1, 0, 1, 0, 1}}};
  for (const auto& summands : words) {
    JQ e;
    for (const auto& w : summands) e.emplace(t.element_by_word(w), Rat(1));
    rep.elements.push_back(std::move(e));
  }

  std::vector<std::vector<Rat>> rows;
  for (const JQ& e : rep.elements) {
    if (!jcm_contains(r, e, kl.size())) {
      rep.detail = "a reference element lies outside the ideal";
      return rep;
    }
    rows.push_back(jq_to_vec(e, kl.size()));
  }
  const int rank = int(rref_rows(rows).size());
  if (rank != int(rep.elements.size())) {
    rep.detail = "the reference elements are linearly dependent";
    return rep;
  }
  if (rank != r.dim()) {
    rep.detail = "the reference elements do not span the ideal";
    return rep;
  }
  rep.ok = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Module decomposition at u = 1

MultReport kottwitz_mult_check(const cox::GroupTable& t) {
  if (!t.complete())
    throw std::invalid_argument("multiplicity check needs the whole group");
  if (!t.system().star().is_identity())
    throw std::invalid_argument(
        "the multiplicity check is defined for the identity diagram "
        "involution");
  grp::FiniteGroup g = grp::FiniteGroup::from_coxeter(t);
  grp::CharTable chars = grp::character_table(g);
  invmod::InvModule m(t);
  const size_t n = t.size();

  // Character of the module at u = 1.
  std::vector<Rat> trace(n, Rat(0));
  for (ElemId w = 0; w < ElemId(n); ++w) {
    Rat tr(0);
    for (ElemId z : m.involutions()) {
      invmod::Elt img = m.act(w, invmod::Elt{{z, Laurent(1)}});
      auto it = img.find(z);
      if (it != img.end()) tr += it->second.eval(Rat(1));
    }
    trace[size_t(w)] = tr;
  }

  std::vector<long> mult;
  long smd = 0;
  for (int i = 0; i < chars.num_chars(); ++i) {
    grp::Cyc acc;
    for (ElemId w = 0; w < ElemId(n); ++w) {
      if (trace[size_t(w)] == 0) continue;
      acc += trace[size_t(w)] * chars.value(i, g, g.inverse(int(w)));
    }
    if (!acc.is_rational())
      throw std::logic_error("module character pairing is not rational");
    const Rat v = acc.rational() / Rat(long(n));
    if (denominator(v) != 1 || numerator(v) < 0)
      throw std::logic_error("module multiplicity is not a nonnegative "
                             "integer");
    const long mi = numerator(v).convert_to<long>();
    mult.push_back(mi);
    smd += mi * chars.degree[size_t(i)];
  }

  const int xr =
      laurent::rank(hecke::left_mult_matrix(t, hecke::star_fixed_sum(t)));
  return MultReport{std::move(g), std::move(chars), std::move(mult),
                    long(m.involutions().size()), smd, xr};
}

}  // namespace kl
