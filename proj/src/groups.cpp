#include "groups.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace grp {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomial helpers (dense, low to high) for cyclotomic moduli.

using IPoly = std::vector<Int>;

void itrim(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient by a monic divisor.
IPoly idiv_monic(IPoly num, const IPoly& den) {
  IPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
  for (int i = int(num.size()) - 1; i >= int(den.size()) - 1; --i) {
    Int c = num[size_t(i)];
    if (c == 0) continue;
    const size_t qi = size_t(i) - (den.size() - 1);
    q[qi] = c;
    for (size_t j = 0; j < den.size(); ++j) num[qi + j] -= c * den[j];
  }
  itrim(num);
  if (!num.empty()) throw std::logic_error("inexact cyclotomic division");
  return q;
}

const IPoly& cyclotomic(int n) {
  static std::map<int, IPoly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by Phi_d for all proper divisors d of n.
  IPoly p(size_t(n) + 1, Int(0));
  p[0] = -1;
  p[size_t(n)] = 1;
  // Proper divisors in increasing order: every proper divisor of a divisor
  // of n also divides n, so building in this order keeps the cache closed.
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto sub = cache.find(d);
    if (sub == cache.end()) {
      IPoly q(size_t(d) + 1, Int(0));
      q[0] = -1;
      q[size_t(d)] = 1;
      for (int e = 1; e < d; ++e)
        if (d % e == 0) q = idiv_monic(std::move(q), cache.at(e));
      sub = cache.emplace(d, std::move(q)).first;
    }
    p = idiv_monic(std::move(p), sub->second);
  }
  return cache.emplace(n, std::move(p)).first->second;
}

// ---------------------------------------------------------------------------
// F_p helpers (p < 2^31).

using u64 = unsigned long long;

u64 mulm(u64 a, u64 b, u64 p) { return (unsigned __int128)(a)*b % p; }
u64 addm(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 subm(u64 a, u64 b, u64 p) { return (a + p - b % p) % p; }
u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> f;
  for (long d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      if (f.empty() || f.back() != d) f.push_back(d);
      n /= d;
    }
  if (n > 1) f.push_back(n);
  return f;
}

u64 primitive_root(long p) {
  const auto fs = prime_factors(p - 1);
  for (u64 g = 2; g < u64(p); ++g) {
    bool ok = true;
    for (long q : fs)
      if (powm(g, u64((p - 1) / q), u64(p)) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

}  // namespace

// ---------------------------------------------------------------------------
// CycField / Cyc

CycField::CycField(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  const IPoly& p = cyclotomic(n);
  phi_ = p;
}

void Cyc::reduce(const std::vector<Int>& phi) {
  const size_t deg = phi.size() - 1;
  while (c_.size() > deg) {
    Rat lead = c_.back();
    c_.pop_back();
    if (lead == 0) continue;
    const size_t off = c_.size() - deg;
    for (size_t j = 0; j < deg; ++j) c_[off + j] -= lead * Rat(phi[j]);
  }
  c_.resize(deg, Rat(0));
}

Cyc::Cyc(const CycField& f, const Rat& r) : n_(f.n()) {
  c_.assign(size_t(f.degree()), Rat(0));
  if (!c_.empty()) c_[0] = r;
}

Cyc Cyc::root_power(const CycField& f, long k) {
  Cyc v;
  v.n_ = f.n();
  long e = ((k % f.n()) + f.n()) % f.n();
  v.c_.assign(size_t(e) + 1, Rat(0));
  v.c_[size_t(e)] = 1;
  v.reduce(f.modulus());
  return v;
}

bool Cyc::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational() const {
  if (!is_rational()) throw std::logic_error("cyclotomic value is irrational");
  return c_.empty() ? Rat(0) : c_[0];
}

Cyc& Cyc::operator+=(const Cyc& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  if (n_ != o.n_) throw std::logic_error("cyclotomic field mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyc& Cyc::operator-=(const Cyc& o) { return *this += -o; }

Cyc operator-(const Cyc& a) {
  Cyc r = a;
  for (Rat& c : r.c_) c = -c;
  return r;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
  if (a.c_.empty() || b.c_.empty()) return Cyc();
  if (a.n_ != b.n_) throw std::logic_error("cyclotomic field mismatch");
  Cyc r;
  r.n_ = a.n_;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.reduce(cyclotomic(a.n_));
  return r;
}

Cyc operator*(const Rat& s, Cyc a) {
  for (Rat& c : a.c_) c *= s;
  return a;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic");
  // Extended Euclid in Q[x] against Phi_n: s * this + t * Phi = 1.
  using QPoly = std::vector<Rat>;
  auto trim = [](QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  const IPoly& phi = cyclotomic(n_);
  QPoly r0(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) r0[i] = Rat(phi[i]);
  QPoly r1 = c_;
  trim(r1);
  QPoly s0{Rat(0)}, s1{Rat(1)};  // coefficients of *this in r0, r1
  while (true) {
    if (r1.empty()) throw std::logic_error("cyclotomic inverse: gcd != 1");
    if (r1.size() == 1) {  // unit: done
      Cyc out;
      out.n_ = n_;
      out.c_ = s1;
      const Rat inv = Rat(1) / r1[0];
      for (Rat& c : out.c_) c *= inv;
      out.reduce(phi);
      return out;
    }
    // r0 = q r1 + rem
    QPoly rem = r0, q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 1,
                      Rat(0));
    for (int i = int(rem.size()) - 1; i >= int(r1.size()) - 1; --i) {
      if (rem[size_t(i)] == 0) continue;
      const Rat c = rem[size_t(i)] / r1.back();
      const size_t qi = size_t(i) - (r1.size() - 1);
      q[qi] = c;
      for (size_t j = 0; j < r1.size(); ++j) rem[qi + j] -= c * r1[j];
    }
    trim(rem);
    // s_new = s0 - q s1
    QPoly s_new = s0;
    s_new.resize(std::max(s_new.size(), q.size() + s1.size()), Rat(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s_new[i + j] -= q[i] * s1[j];
    }
    trim(s_new);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s_new);
  }
}

Cyc Cyc::galois(const CycField& f, long k) const {
  if (c_.empty()) return *this;
  if (f.n() != n_) throw std::logic_error("cyclotomic field mismatch");
  const long kk = ((k % n_) + n_) % n_;
  if (n_ > 1 && std::gcd(kk, long(n_)) != 1)
    throw std::invalid_argument("galois exponent not coprime to the order");
  Cyc r;
  r.n_ = n_;
  r.c_.assign(size_t(n_), Rat(0));
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    r.c_[size_t(kk * long(j) % n_)] += c_[j];
  }
  r.reduce(f.modulus());
  return r;
}

Cyc Cyc::lift(const CycField& to) const {
  if (c_.empty()) return *this;
  if (to.n() % n_ != 0)
    throw std::invalid_argument("target cyclotomic order not a multiple");
  const long step = to.n() / n_;
  Cyc r;
  r.n_ = to.n();
  r.c_.assign(size_t(to.n()), Rat(0));
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    r.c_[size_t(long(j) * step % to.n())] += c_[j];
  }
  r.reduce(to.modulus());
  return r;
}

bool operator<(const Cyc& a, const Cyc& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  return a.c_ < b.c_;
}

std::string Cyc::str() const {
  std::string out;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const bool neg = c_[j] < 0;
    Rat mag = neg ? Rat(-c_[j]) : c_[j];
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string m = mag.str();
    if (j == 0) {
      out += m;
    } else {
      if (m != "1") out += m + "*";
      out += "z";
      if (j > 1) out += "^" + std::to_string(j);
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                    std::string name) {
  FiniteGroup g;
  g.name_ = std::move(name);
  g.table_ = std::move(table);
  g.n_ = int(g.table_.size());
  g.finish();
  return g;
}

void FiniteGroup::finish() {
  const int n = n_;
  if (n <= 0) throw std::invalid_argument("empty multiplication table");
  for (const auto& row : table_)
    if (int(row.size()) != n)
      throw std::invalid_argument("multiplication table is not square");
  for (int a = 0; a < n; ++a) {
    if (mult(0, a) != a || mult(a, 0) != a)
      throw std::invalid_argument("element 0 is not the identity");
    std::vector<bool> seen_r(size_t(n), false), seen_c(size_t(n), false);
    for (int b = 0; b < n; ++b) {
      int r = mult(a, b), c = mult(b, a);
      if (r < 0 || r >= n || c < 0 || c >= n || seen_r[size_t(r)] ||
          seen_c[size_t(c)])
        throw std::invalid_argument("multiplication table is not a bijection");
      seen_r[size_t(r)] = seen_c[size_t(c)] = true;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          throw std::invalid_argument("multiplication table is not associative");

  inv_.assign(size_t(n), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mult(a, b) == 0) inv_[size_t(a)] = b;

  class_of_.assign(size_t(n), -1);
  for (int a = 0; a < n; ++a) {
    if (class_of_[size_t(a)] >= 0) continue;
    const int c = int(class_rep_.size());
    std::vector<int> members;
    for (int g = 0; g < n; ++g) {
      const int conj = mult(mult(g, a), inv_[size_t(g)]);
      if (class_of_[size_t(conj)] < 0) {
        class_of_[size_t(conj)] = c;
        members.push_back(conj);
      }
    }
    std::sort(members.begin(), members.end());
    class_rep_.push_back(members.front());
    class_size_.push_back(int(members.size()));
    class_members_.push_back(std::move(members));
  }
}

int FiniteGroup::order(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mult(x, a);
    ++k;
  }
  return k;
}

int FiniteGroup::exponent() const {
  long e = 1;
  for (int a = 0; a < n_; ++a) e = std::lcm(e, long(order(a)));
  return int(e);
}

std::vector<int> FiniteGroup::centralizer(int a) const {
  std::vector<int> out;
  for (int g = 0; g < n_; ++g)
    if (mult(g, a) == mult(a, g)) out.push_back(g);
  return out;
}

std::vector<int> FiniteGroup::centralizer2(int a, int b) const {
  std::vector<int> out;
  for (int g = 0; g < n_; ++g)
    if (mult(g, a) == mult(a, g) && mult(g, b) == mult(b, g)) out.push_back(g);
  return out;
}

std::vector<int> FiniteGroup::square_roots(int a) const {
  std::vector<int> out;
  for (int s = 0; s < n_; ++s)
    if (mult(s, s) == a) out.push_back(s);
  return out;
}

std::vector<std::pair<int, int>> FiniteGroup::commuting_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; g < n_; ++g)
    for (int h = 0; h < n_; ++h)
      if (mult(g, h) == mult(h, g)) out.emplace_back(g, h);
  return out;
}

FiniteGroup FiniteGroup::trivial() {
  return from_table({{0}}, "1");
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(size_t(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[size_t(a)][size_t(b)] = (a + b) % n;
  return from_table(std::move(t), "C" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 6)
    throw std::invalid_argument("symmetric group supported for 1 <= n <= 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> base(static_cast<size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = int(i);
  const int m = int(perms.size());
  std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(size_t(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> comp(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        comp[size_t(i)] = perms[size_t(a)][size_t(perms[size_t(b)][size_t(i)])];
      t[size_t(a)][size_t(b)] = index.at(comp);
    }
  return from_table(std::move(t), "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw std::invalid_argument("dihedral parameter must be >= 1");
  // Elements r^a f^b with f r f = r^-1; id = (a, b) -> b*n + a.
  const int m = 2 * n;
  auto id = [n](int a, int b) { return b * n + a; };
  std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(size_t(m)));
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          const int a = ((a1 + (b1 ? n - a2 : a2)) % n + n) % n;
          t[size_t(id(a1, b1))][size_t(id(a2, b2))] = id(a, b1 ^ b2);
        }
  return from_table(std::move(t), "Dih" + std::to_string(n));
}

FiniteGroup FiniteGroup::quaternion8() {
  // ids: 0:+1 1:-1 2:+i 3:-i 4:+j 5:-j 6:+k 7:-k
  // base products (1,i,j,k as 0..3) with sign.
  static const int bprod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1},
                                  {3, 2, 1, 0}};
  static const int bsign[4][4] = {{+1, +1, +1, +1},
                                  {+1, -1, +1, -1},
                                  {+1, -1, -1, +1},
                                  {+1, +1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int bx = x / 2, sx = x % 2, by = y / 2, sy = y % 2;
      const int b = bprod[bx][by];
      const int s = (sx ^ sy) ^ (bsign[bx][by] < 0 ? 1 : 0);
      t[size_t(x)][size_t(y)] = b * 2 + s;
    }
  return from_table(std::move(t), "Q8");
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  const int nb = b.size();
  const int m = a.size() * nb;
  std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(size_t(m)));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      t[size_t(x)][size_t(y)] =
          a.mult(x / nb, y / nb) * nb + b.mult(x % nb, y % nb);
  return from_table(std::move(t), a.name() + "x" + b.name());
}

Subgroup subgroup_generated(const FiniteGroup& g, std::vector<int> gens) {
  std::vector<bool> in(size_t(g.size()), false);
  std::vector<int> stack{0}, elems{0};
  in[0] = true;
  for (int x : gens)
    if (!in[size_t(x)]) {
      in[size_t(x)] = true;
      elems.push_back(x);
      stack.push_back(x);
    }
  // Closure under products with all current members.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<int> snapshot = elems;
    for (int a : snapshot)
      for (int b : snapshot) {
        const int c = g.mult(a, b);
        if (!in[size_t(c)]) {
          in[size_t(c)] = true;
          elems.push_back(c);
          grew = true;
        }
      }
  }
  std::sort(elems.begin(), elems.end());
  std::vector<int> from_parent(size_t(g.size()), -1);
  for (size_t i = 0; i < elems.size(); ++i)
    from_parent[size_t(elems[i])] = int(i);
  const int m = int(elems.size());
  std::vector<std::vector<int>> t(static_cast<size_t>(m), std::vector<int>(size_t(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int c = g.mult(elems[size_t(a)], elems[size_t(b)]);
      const int ci = from_parent[size_t(c)];
      if (ci < 0) throw std::logic_error("subgroup closure failed");
      t[size_t(a)][size_t(b)] = ci;
    }
  return Subgroup{FiniteGroup::from_table(std::move(t), g.name() + "-sub"),
                  std::move(elems), std::move(from_parent)};
}

// ---------------------------------------------------------------------------
// Character tables (modular method with exact lifting and validation)

namespace {

struct FpMatrix {
  int n = 0;
  std::vector<u64> a;
  FpMatrix(int n_, u64 init = 0) : n(n_), a(size_t(n_) * n_, init) {}
  u64& at(int r, int c) { return a[size_t(r) * n + c]; }
  u64 at(int r, int c) const { return a[size_t(r) * n + c]; }
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<u64>>& rows, u64 p) {
  std::vector<int> pivots;
  size_t r = 0;
  const size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const u64 inv = invm(rows[r][c], p);
    for (size_t j = c; j < ncols; ++j) rows[r][j] = mulm(rows[r][j], inv, p);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const u64 f = rows[i][c];
      for (size_t j = c; j < ncols; ++j)
        rows[i][j] = subm(rows[i][j], mulm(f, rows[r][j], p), p);
    }
    pivots.push_back(int(c));
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Kernel basis of a square matrix over F_p (rows of the result).
std::vector<std::vector<u64>> kernel(const FpMatrix& m, u64 p) {
  std::vector<std::vector<u64>> rows(size_t(m.n),
                                     std::vector<u64>(size_t(m.n)));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) rows[size_t(i)][size_t(j)] = m.at(i, j);
  std::vector<int> pivots = rref(rows, p);
  std::vector<bool> is_pivot(size_t(m.n), false);
  for (int c : pivots) is_pivot[size_t(c)] = true;
  std::vector<std::vector<u64>> basis;
  for (int c = 0; c < m.n; ++c) {
    if (is_pivot[size_t(c)]) continue;
    std::vector<u64> v(size_t(m.n), 0);
    v[size_t(c)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[size_t(pivots[r])] = subm(0, rows[r][size_t(c)], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

CharTable character_table(const FiniteGroup& g) {
  const int r = g.num_classes();
  const int N = g.exponent();
  CharTable out{CycField(N), {}, {}};

  if (g.size() == 1) {
    out.chi = {{Cyc(out.field, Rat(1))}};
    out.degree = {1};
    return out;
  }

  // Prime p = 1 (mod N) with p > 2 sqrt(|G|), so degrees and eigenvalue
  // multiplicities are determined by their residues.
  long p = 0;
  {
    long lo = 2;  // smallest integer with lo^2 > 4 |G|, i.e. lo > 2 sqrt(|G|)
    while (lo * lo <= 4L * g.size()) ++lo;
    for (long c = N + 1;; c += N)
      if (c >= lo && is_prime(c)) {
        p = c;
        break;
      }
  }
  const u64 up = u64(p);

  // Class constants: a[i](j,k) = #{(x,y) in C_i x C_j : xy = rep_k}.
  std::vector<FpMatrix> cls_mat;
  cls_mat.reserve(size_t(r));
  for (int i = 0; i < r; ++i) {
    FpMatrix m(r);
    for (int k = 0; k < r; ++k) {
      const int gk = g.class_rep(k);
      for (int x : g.class_members(i)) {
        const int y = g.mult(g.inverse(x), gk);
        m.at(g.class_of(y), k) = addm(m.at(g.class_of(y), k), 1, up);
      }
    }
    cls_mat.push_back(std::move(m));
  }

  // Split F_p^r into common eigenspaces; subspaces kept as RREF row bases.
  using Space = std::vector<std::vector<u64>>;
  std::vector<Space> spaces;
  {
    Space full(size_t(r), std::vector<u64>(size_t(r), 0));
    for (int i = 0; i < r; ++i) full[size_t(i)][size_t(i)] = 1;
    spaces.push_back(std::move(full));
  }
  for (int i = 1; i < r; ++i) {
    bool all_one = true;
    for (const Space& s : spaces) all_one = all_one && s.size() == 1;
    if (all_one) break;
    std::vector<Space> next;
    for (Space& s : spaces) {
      const int d = int(s.size());
      if (d == 1) {
        next.push_back(std::move(s));
        continue;
      }
      std::vector<int> pivots = rref(s, up);
      // Restriction matrix: image of each basis row expressed in the basis.
      FpMatrix rest(d);
      for (int t = 0; t < d; ++t) {
        std::vector<u64> img(size_t(r), 0);
        for (int c = 0; c < r; ++c) {
          if (s[size_t(t)][size_t(c)] == 0) continue;
          for (int rr = 0; rr < r; ++rr)
            img[size_t(rr)] =
                addm(img[size_t(rr)],
                     mulm(cls_mat[size_t(i)].at(rr, c), s[size_t(t)][size_t(c)], up),
                     up);
        }
        for (int t2 = 0; t2 < d; ++t2) {
          const u64 coef = img[size_t(pivots[size_t(t2)])];
          rest.at(t2, t) = coef;
          if (coef != 0)
            for (int c = 0; c < r; ++c)
              img[size_t(c)] =
                  subm(img[size_t(c)], mulm(coef, s[size_t(t2)][size_t(c)], up), up);
        }
        for (int c = 0; c < r; ++c)
          if (img[size_t(c)] != 0)
            throw std::logic_error("class matrix did not preserve subspace");
      }
      // Split s by eigenvalues of the restriction.
      int found = 0;
      for (u64 lam = 0; lam < up && found < d; ++lam) {
        FpMatrix shifted = rest;
        for (int t = 0; t < d; ++t)
          shifted.at(t, t) = subm(shifted.at(t, t), lam, up);
        auto ker = kernel(shifted, up);
        if (ker.empty()) continue;
        Space sub;
        for (const auto& kv : ker) {
          std::vector<u64> v(size_t(r), 0);
          for (int t = 0; t < d; ++t) {
            if (kv[size_t(t)] == 0) continue;
            for (int c = 0; c < r; ++c)
              v[size_t(c)] = addm(v[size_t(c)],
                                  mulm(kv[size_t(t)], s[size_t(t)][size_t(c)], up), up);
          }
          sub.push_back(std::move(v));
        }
        found += int(sub.size());
        next.push_back(std::move(sub));
      }
      if (found != d)
        throw std::logic_error("class matrix is not diagonalizable mod p");
    }
    spaces = std::move(next);
  }
  for (const Space& s : spaces)
    if (s.size() != 1)
      throw std::logic_error("common eigenspaces are not one-dimensional");

  // Per character: central characters omega, degree, values mod p.
  const u64 w = primitive_root(p);
  const u64 zN = powm(w, u64((p - 1) / N), up);
  std::vector<int> inv_class(static_cast<size_t>(r));
  for (int c = 0; c < r; ++c)
    inv_class[size_t(c)] = g.class_of(g.inverse(g.class_rep(c)));

  std::vector<std::vector<Cyc>> chars;
  std::vector<long> degrees;
  for (const Space& s : spaces) {
    std::vector<u64> omega = s[0];
    if (omega[0] == 0)
      throw std::logic_error("central character vanishes on the identity");
    const u64 scale = invm(omega[0], up);
    for (u64& v : omega) v = mulm(v, scale, up);

    // 1/deg^2 = |G|^-1 sum_j omega_j omega_{j*} / |C_j|
    u64 acc = 0;
    for (int j = 0; j < r; ++j)
      acc = addm(acc,
                 mulm(mulm(omega[size_t(j)], omega[size_t(inv_class[size_t(j)])], up),
                      invm(u64(g.class_size(j)), up), up),
                 up);
    const u64 deg_sq = mulm(u64(g.size() % p), invm(acc, up), up);
    long deg = 0;
    for (long c = 1; c * c <= g.size(); ++c)
      if (mulm(u64(c), u64(c), up) == deg_sq) {
        deg = c;
        break;
      }
    if (deg == 0) throw std::logic_error("character degree not recovered");

    std::vector<u64> f(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j)
      f[size_t(j)] = mulm(mulm(u64(deg % p), omega[size_t(j)], up),
                          invm(u64(g.class_size(j)), up), up);

    // Lift each class value as sum of eigenvalue multiplicities.
    std::vector<Cyc> row(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) {
      const int rep = g.class_rep(j);
      const int n = g.order(rep);
      const u64 zn = powm(zN, u64(N / n), up);
      const u64 ninv = invm(u64(n), up);
      Cyc val(out.field, Rat(0));
      std::vector<int> cls_of_power(static_cast<size_t>(n));
      int x = 0;
      for (int t = 0; t < n; ++t) {
        cls_of_power[size_t(t)] = g.class_of(x);
        x = g.mult(x, rep);
      }
      for (int k = 0; k < n; ++k) {
        u64 m = 0;
        for (int t = 0; t < n; ++t) {
          const u64 zpow = powm(zn, u64((long(n) - k) * t % n), up);
          m = addm(m, mulm(f[size_t(cls_of_power[size_t(t)])], zpow, up), up);
        }
        m = mulm(m, ninv, up);
        if (m > u64(deg))
          throw std::logic_error("eigenvalue multiplicity out of range");
        if (m != 0)
          val += Rat(Int(m)) * Cyc::root_power(out.field, long(N / n) * k);
      }
      row[size_t(j)] = std::move(val);
    }
    chars.push_back(std::move(row));
    degrees.push_back(deg);
  }

  // Canonical order.
  std::vector<int> perm(chars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (degrees[size_t(a)] != degrees[size_t(b)])
      return degrees[size_t(a)] < degrees[size_t(b)];
    return chars[size_t(a)] < chars[size_t(b)];
  });
  for (int i : perm) {
    out.chi.push_back(std::move(chars[size_t(i)]));
    out.degree.push_back(degrees[size_t(i)]);
  }

  // Exact validation: degrees, first orthogonality, completeness.
  if (int(out.chi.size()) != r)
    throw std::logic_error("wrong number of irreducible characters");
  long deg_sq_sum = 0;
  for (size_t i = 0; i < out.chi.size(); ++i) {
    if (!out.chi[i][0].is_rational() ||
        out.chi[i][0].rational() != Rat(out.degree[i]))
      throw std::logic_error("identity value disagrees with the degree");
    deg_sq_sum += out.degree[i] * out.degree[i];
  }
  if (deg_sq_sum != g.size())
    throw std::logic_error("degree squares do not sum to the group order");
  for (size_t a = 0; a < out.chi.size(); ++a)
    for (size_t b = a; b < out.chi.size(); ++b) {
      Cyc acc(out.field, Rat(0));
      for (int j = 0; j < r; ++j)
        acc += Rat(g.class_size(j)) *
               (out.chi[a][size_t(j)] * out.chi[b][size_t(inv_class[size_t(j)])]);
      const Rat want = a == b ? Rat(g.size()) : Rat(0);
      if (!acc.is_rational() || acc.rational() != want)
        throw std::logic_error("character table fails orthogonality");
    }
  return out;
}

int frobenius_schur(const FiniteGroup& g, const CharTable& t, int i) {
  Cyc acc(t.field, Rat(0));
  for (int c = 0; c < g.num_classes(); ++c) {
    const int sq = g.mult(g.class_rep(c), g.class_rep(c));
    acc += Rat(g.class_size(c)) * t.chi[size_t(i)][size_t(g.class_of(sq))];
  }
  if (!acc.is_rational()) throw std::logic_error("irrational FS indicator");
  const Rat v = acc.rational() / Rat(g.size());
  if (v == 1) return 1;
  if (v == -1) return -1;
  if (v == 0) return 0;
  throw std::logic_error("FS indicator outside {-1,0,1}");
}

int dual_character(const FiniteGroup& g, const CharTable& t, int i) {
  for (int j = 0; j < t.num_chars(); ++j) {
    bool ok = true;
    for (int c = 0; c < g.num_classes() && ok; ++c)
      ok = t.chi[size_t(j)][size_t(c)] ==
           t.chi[size_t(i)][size_t(g.class_of(g.inverse(g.class_rep(c))))];
    if (ok) return j;
  }
  throw std::logic_error("dual character not found");
}

long trivial_multiplicity_on(const FiniteGroup& g, const CharTable& t, int i,
                             const std::vector<int>& elems) {
  Cyc acc(t.field, Rat(0));
  for (int e : elems) acc += t.value(i, g, e);
  if (!acc.is_rational())
    throw std::logic_error("irrational restriction multiplicity");
  const Rat m = acc.rational() / Rat(long(elems.size()));
  const Int num = boost::multiprecision::numerator(m);
  const Int den = boost::multiprecision::denominator(m);
  if (den != 1 || num < 0)
    throw std::logic_error("restriction multiplicity is not in N");
  return long(num);
}

}  // namespace grp
