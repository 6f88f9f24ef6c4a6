#include "coxeter.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cox {

namespace {

using boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Type-string parsing

struct Factor {
  char letter;
  int rank;       // number of nodes before affine extension
  int bond = 0;   // for I2(m)
  bool affine = false;
};

Factor parse_factor(const std::string& s) {
  if (s.empty()) throw InvalidMatrix("empty type factor");
  Factor f{};
  f.letter = char(std::toupper(static_cast<unsigned char>(s[0])));
  size_t i = 1;
  std::string tail = s.substr(i);
  if (!tail.empty() && tail.back() == '~') {
    f.affine = true;
    tail.pop_back();
  }
  if (f.letter == 'I') {
    // I2(m)
    if (f.affine) throw InvalidMatrix("affine form of I2(m) is not supported");
    if (tail.size() < 4 || tail[0] != '2' || tail[1] != '(' ||
        tail.back() != ')')
      throw InvalidMatrix("malformed dihedral type '" + s + "'");
    f.rank = 2;
    try {
      f.bond = std::stoi(tail.substr(2, tail.size() - 3));
    } catch (const std::exception&) {
      throw InvalidMatrix("malformed dihedral type '" + s + "'");
    }
    if (f.bond < 2) throw InvalidMatrix("I2(m) requires m >= 2");
    return f;
  }
  if (tail.empty() ||
      !std::all_of(tail.begin(), tail.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InvalidMatrix("malformed type factor '" + s + "'");
  f.rank = std::stoi(tail);
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) throw InvalidMatrix("type '" + s + "': " + msg);
  };
  switch (f.letter) {
    case 'A': need(f.rank >= 1, "A requires rank >= 1"); break;
    case 'B': need(f.rank >= 2, "B requires rank >= 2"); break;
    case 'D': need(f.rank >= 4, "D requires rank >= 4"); break;
    case 'E': need(f.rank == 6, "only E6 is supported"); break;
    case 'F': need(f.rank == 4, "F requires rank 4"); break;
    case 'G': need(f.rank == 2, "G requires rank 2"); break;
    default: throw InvalidMatrix("unknown type letter in '" + s + "'");
  }
  if (f.affine && f.letter == 'B') need(f.rank >= 2, "");
  return f;
}

// Coxeter matrix of one factor (bond list; everything else is 2).
CoxeterMatrix factor_matrix(const Factor& f) {
  auto path = [](CoxeterMatrix& m, int from, int to) {
    for (int i = from; i < to; ++i) m.set(i, i + 1, 3);
  };
  if (f.letter == 'I') {
    CoxeterMatrix m(2);
    m.set(0, 1, f.bond);
    return m;
  }
  const int n = f.rank;
  if (!f.affine) {
    CoxeterMatrix m(n);
    switch (f.letter) {
      case 'A':
        path(m, 0, n - 1);
        break;
      case 'B':
        path(m, 0, n - 2);
        m.set(n - 2, n - 1, 4);
        break;
      case 'D':
        path(m, 0, n - 3);
        m.set(n - 3, n - 2, 3);
        m.set(n - 3, n - 1, 3);
        break;
      case 'E':
        path(m, 0, 4);
        m.set(2, 5, 3);
        break;
      case 'F':
        m.set(0, 1, 3);
        m.set(1, 2, 4);
        m.set(2, 3, 3);
        break;
      case 'G':
        m.set(0, 1, 6);
        break;
    }
    return m;
  }
  // Affine extensions (one extra node).
  switch (f.letter) {
    case 'A': {
      if (n == 1) {
        CoxeterMatrix m(2);
        m.set(0, 1, 0);  // infinite bond
        return m;
      }
      CoxeterMatrix m(n + 1);
      path(m, 0, n - 1);
      m.set(n - 1, n, 3);
      m.set(n, 0, 3);  // cycle
      return m;
    }
    case 'B': {
      if (n == 2) {
        CoxeterMatrix m(3);
        m.set(0, 1, 4);
        m.set(1, 2, 4);
        return m;
      }
      CoxeterMatrix m(n + 1);
      path(m, 0, n - 2);
      m.set(n - 2, n - 1, 4);
      m.set(n, 1, 3);
      return m;
    }
    case 'D': {
      CoxeterMatrix m(n + 1);
      path(m, 0, n - 3);
      m.set(n - 3, n - 2, 3);
      m.set(n - 3, n - 1, 3);
      m.set(n, 1, 3);
      return m;
    }
    case 'G': {
      CoxeterMatrix m(3);
      m.set(0, 1, 3);
      m.set(1, 2, 6);
      return m;
    }
    case 'F': {
      CoxeterMatrix m(5);
      m.set(0, 1, 3);
      m.set(1, 2, 3);
      m.set(2, 3, 4);
      m.set(3, 4, 3);
      return m;
    }
    case 'E': {
      CoxeterMatrix m(7);
      path(m, 0, 4);
      m.set(2, 5, 3);
      m.set(5, 6, 3);
      return m;
    }
    default:
      throw InvalidMatrix("affine form not supported for this letter");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// ---------------------------------------------------------------------------
// Realizations

// Crystallographic Cartan entries for a bond order: a_ij * a_ji must equal
// 4cos^2(pi/m), i.e. 0,1,2,3 for m = 2,3,4,6 and 4 for m = infinity.
bool crystallographic_bond(int m) {
  return m == 2 || m == 3 || m == 4 || m == 6 || m == 0;
}

// Reflection matrices on the root lattice of a crystallographic component.
// s_i maps alpha_j to alpha_j - a(i,j) alpha_i.
std::vector<std::vector<long long>> lattice_generators(
    const CoxeterMatrix& cm, const std::vector<int>& nodes) {
  const int n = int(nodes.size());
  std::vector<std::vector<int>> a(size_t(n), std::vector<int>(size_t(n), 0));
  for (int i = 0; i < n; ++i) {
    a[size_t(i)][size_t(i)] = 2;
    for (int j = i + 1; j < n; ++j) {
      switch (cm.m(nodes[size_t(i)], nodes[size_t(j)])) {
        case 2: break;
        case 3: a[size_t(i)][size_t(j)] = a[size_t(j)][size_t(i)] = -1; break;
        case 4: a[size_t(i)][size_t(j)] = -1; a[size_t(j)][size_t(i)] = -2; break;
        case 6: a[size_t(i)][size_t(j)] = -1; a[size_t(j)][size_t(i)] = -3; break;
        case 0: a[size_t(i)][size_t(j)] = a[size_t(j)][size_t(i)] = -2; break;
        default: throw InvalidMatrix("non-crystallographic bond in lattice block");
      }
    }
  }
  std::vector<std::vector<long long>> gens(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::vector<long long> m(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i) m[size_t(i) * n + i] = 1;
    for (int j = 0; j < n; ++j) m[size_t(s) * n + j] -= a[size_t(s)][size_t(j)];
    gens[size_t(s)] = std::move(m);
  }
  return gens;
}

// Positive-definiteness of the Cartan block decides finiteness (leading
// principal minors all positive).
bool lattice_finite(const CoxeterMatrix& cm, const std::vector<int>& nodes) {
  const int n = int(nodes.size());
  std::vector<std::vector<cpp_int>> a(static_cast<size_t>(n), std::vector<cpp_int>(size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        a[size_t(i)][size_t(j)] = 2;
        continue;
      }
      switch (cm.m(nodes[size_t(i)], nodes[size_t(j)])) {
        case 2: a[size_t(i)][size_t(j)] = 0; break;
        case 3: a[size_t(i)][size_t(j)] = -1; break;
        case 4: a[size_t(i)][size_t(j)] = (i < j) ? -1 : -2; break;
        case 6: a[size_t(i)][size_t(j)] = (i < j) ? -1 : -3; break;
        case 0: a[size_t(i)][size_t(j)] = -2; break;
        default: throw InvalidMatrix("non-crystallographic bond in lattice block");
      }
    }
  // Fraction-free elimination without pivoting: after step r the pivot
  // a[r][r] equals the (r+1)-st leading principal minor.  The matrix is
  // positive definite iff every pivot is positive, and a non-positive pivot
  // already decides the answer, so the no-pivot scheme never divides by zero.
  cpp_int prev = 1;
  for (int r = 0; r < n; ++r) {
    if (a[size_t(r)][size_t(r)] <= 0) return false;
    for (int i = r + 1; i < n; ++i) {
      for (int j = r + 1; j < n; ++j)
        a[size_t(i)][size_t(j)] = (a[size_t(i)][size_t(j)] * a[size_t(r)][size_t(r)] -
                                   a[size_t(i)][size_t(r)] * a[size_t(r)][size_t(j)]) /
                                  prev;
      a[size_t(i)][size_t(r)] = 0;
    }
    prev = a[size_t(r)][size_t(r)];
  }
  return true;
}

std::vector<std::vector<int>> connected_components(const CoxeterMatrix& m) {
  const int n = m.rank();
  std::vector<int> comp(size_t(n), -1);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (comp[size_t(i)] >= 0) continue;
    std::vector<int> stack{i}, nodes;
    comp[size_t(i)] = int(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      nodes.push_back(v);
      for (int j = 0; j < n; ++j)
        if (j != v && m.m(v, j) != 2 && comp[size_t(j)] < 0) {
          comp[size_t(j)] = int(out.size());
          stack.push_back(j);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    out.push_back(std::move(nodes));
  }
  return out;
}

long long checked_dot(const long long* a, const long long* b, int n, int stride) {
  using b128 = __int128;
  b128 acc = 0;
  for (int k = 0; k < n; ++k) acc += b128(a[k]) * b128(b[size_t(k) * stride]);
  if (acc > (b128(1) << 62) || acc < -(b128(1) << 62))
    throw LimitExceeded("lattice coordinates exceed the exact integer range");
  return static_cast<long long>(acc);
}

}  // namespace

void CoxeterMatrix::validate() const {
  if (rank_ <= 0) throw InvalidMatrix("rank must be positive");
  for (int i = 0; i < rank_; ++i) {
    if (m(i, i) != 1) throw InvalidMatrix("diagonal entries must be 1");
    for (int j = i + 1; j < rank_; ++j) {
      if (m(i, j) != m(j, i)) throw InvalidMatrix("matrix must be symmetric");
      if (m(i, j) == 1 || m(i, j) < 0)
        throw InvalidMatrix("off-diagonal bonds must be >= 2 (0 = infinity)");
    }
  }
}

void CoxeterSystem::set_star(std::optional<StarMap> star) {
  star_ = star ? *star : StarMap::identity(rank());
  if (int(star_.perm.size()) != rank())
    throw InvalidStar("star permutation has wrong size");
  std::vector<bool> seen(size_t(rank()), false);
  for (GenIdx s : star_.perm) {
    if (s < 0 || s >= rank() || seen[size_t(s)])
      throw InvalidStar("star is not a permutation of the generators");
    seen[size_t(s)] = true;
  }
  for (int i = 0; i < rank(); ++i) {
    if (star_.perm[size_t(star_.perm[size_t(i)])] != i)
      throw InvalidStar("star is not an involution");
    for (int j = 0; j < rank(); ++j)
      if (matrix_.m(star_.perm[size_t(i)], star_.perm[size_t(j)]) !=
          matrix_.m(i, j))
        throw InvalidStar("star does not preserve the Coxeter matrix");
  }
}

void CoxeterSystem::finish() {
  blocks_.clear();
  finite_ = true;
  state_size_ = 0;
  for (const auto& nodes : connected_components(matrix_)) {
    Block b;
    b.first_gen = nodes.front();
    b.n_gen = int(nodes.size());
    for (size_t k = 0; k < nodes.size(); ++k)
      if (nodes[k] != nodes.front() + int(k))
        throw InvalidMatrix(
            "connected components must use contiguous generator indices");
    bool crystal = true;
    for (size_t i = 0; i < nodes.size() && crystal; ++i)
      for (size_t j = i + 1; j < nodes.size(); ++j)
        if (!crystallographic_bond(matrix_.m(nodes[i], nodes[j]))) {
          crystal = false;
          break;
        }
    if (crystal) {
      b.is_perm = false;
      b.dim = b.n_gen;
      b.mat = lattice_generators(matrix_, nodes);
      if (!lattice_finite(matrix_, nodes)) finite_ = false;
      state_size_ += size_t(b.dim) * b.dim;
    } else if (b.n_gen == 2) {
      // Dihedral action on the vertices of an m-gon: s: i -> -i,
      // t: i -> 1-i (mod m); faithful for m >= 3.
      const int m = matrix_.m(nodes[0], nodes[1]);
      b.is_perm = true;
      b.pts = m;
      b.perm.resize(2);
      b.perm[0].resize(size_t(m));
      b.perm[1].resize(size_t(m));
      for (int i = 0; i < m; ++i) {
        b.perm[0][size_t(i)] = (m - i) % m;
        b.perm[1][size_t(i)] = (m + 1 - i) % m;
      }
      state_size_ += size_t(m);
    } else {
      throw InvalidMatrix(
          "non-crystallographic bonds are only supported in rank-2 components");
    }
    blocks_.push_back(std::move(b));
  }
}

CoxeterSystem CoxeterSystem::from_type(const std::string& type,
                                       std::optional<StarMap> star) {
  std::vector<Factor> factors;
  for (const std::string& part : split(type, 'x')) factors.push_back(parse_factor(part));
  int rank = 0;
  std::vector<CoxeterMatrix> mats;
  for (const Factor& f : factors) {
    mats.push_back(factor_matrix(f));
    rank += mats.back().rank();
  }
  CoxeterMatrix m(rank);
  int off = 0;
  for (const CoxeterMatrix& fm : mats) {
    for (int i = 0; i < fm.rank(); ++i)
      for (int j = i + 1; j < fm.rank(); ++j) m.set(off + i, off + j, fm.m(i, j));
    off += fm.rank();
  }
  m.validate();
  CoxeterSystem sys;
  sys.matrix_ = m;
  sys.description_ = type;
  sys.finish();
  sys.set_star(std::move(star));
  return sys;
}

CoxeterSystem CoxeterSystem::from_matrix(const CoxeterMatrix& m,
                                         std::optional<StarMap> star) {
  m.validate();
  CoxeterSystem sys;
  sys.matrix_ = m;
  sys.description_ = "custom";
  sys.finish();
  sys.set_star(std::move(star));
  return sys;
}

CoxeterSystem CoxeterSystem::product_square(const CoxeterSystem& base) {
  const int r = base.rank();
  CoxeterMatrix m(2 * r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      m.set(i, j, base.matrix().m(i, j));
      m.set(r + i, r + j, base.matrix().m(i, j));
    }
  StarMap swap;
  swap.perm.resize(size_t(2 * r));
  for (int i = 0; i < r; ++i) {
    swap.perm[size_t(i)] = r + i;
    swap.perm[size_t(r + i)] = i;
  }
  CoxeterSystem sys;
  sys.matrix_ = m;
  sys.description_ = base.description() + "x" + base.description();
  sys.finish();
  sys.set_star(swap);
  return sys;
}

std::string CoxeterSystem::letter(GenIdx s) const {
  static const char* kLetters = "stuvwxyz";
  if (rank() <= 8) return std::string(1, kLetters[s]);
  return std::to_string(s + 1);
}

std::string CoxeterSystem::word_string(const std::vector<GenIdx>& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (rank() > 8 && i) out += ".";
    out += letter(w[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Element state: concatenated per-block data (matrix entries / vertex images).
using State = std::vector<long long>;

State identity_state(const CoxeterSystem& sys) {
  State st;
  st.reserve(sys.state_size());
  for (const auto& b : sys.blocks()) {
    if (b.is_perm) {
      for (int i = 0; i < b.pts; ++i) st.push_back(i);
    } else {
      for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) st.push_back(i == j ? 1 : 0);
    }
  }
  return st;
}

// offset of each block inside the state vector
std::vector<size_t> block_offsets(const CoxeterSystem& sys) {
  std::vector<size_t> off;
  size_t o = 0;
  for (const auto& b : sys.blocks()) {
    off.push_back(o);
    o += b.is_perm ? size_t(b.pts) : size_t(b.dim) * b.dim;
  }
  return off;
}

const CoxeterSystem::Block& block_of(const CoxeterSystem& sys, GenIdx s,
                                     size_t& block_idx) {
  const auto& blocks = sys.blocks();
  for (size_t i = 0; i < blocks.size(); ++i)
    if (s >= blocks[i].first_gen && s < blocks[i].first_gen + blocks[i].n_gen) {
      block_idx = i;
      return blocks[i];
    }
  throw InvalidMatrix("generator index out of range");
}

// state of w*s (right multiplication)
State mult_right(const CoxeterSystem& sys, const std::vector<size_t>& off,
                 const State& st, GenIdx s) {
  size_t bi = 0;
  const auto& b = block_of(sys, s, bi);
  State out = st;
  const int local = s - b.first_gen;
  if (b.is_perm) {
    const auto& sig = b.perm[size_t(local)];
    long long* p = out.data() + off[bi];
    const long long* c = st.data() + off[bi];
    for (int i = 0; i < b.pts; ++i) p[i] = c[sig[size_t(i)]];
  } else {
    const int n = b.dim;
    const auto& gm = b.mat[size_t(local)];
    long long* p = out.data() + off[bi];
    const long long* c = st.data() + off[bi];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        p[size_t(i) * n + j] = checked_dot(&c[size_t(i) * n], &gm[size_t(j)], n, n);
  }
  return out;
}

}  // namespace

GroupTable GroupTable::enumerate(const CoxeterSystem& sys,
                                 std::optional<int> bound,
                                 size_t max_elements) {
  if (!bound && !sys.finite())
    throw InfiniteGroupFullEnumeration(
        "full enumeration of an infinite Coxeter group (" + sys.description() +
        "); pass a length bound");
  GroupTable t;
  t.sys_owner_ = std::make_shared<CoxeterSystem>(sys);
  t.sys_ = t.sys_owner_.get();
  t.rank_ = sys.rank();
  t.bound_ = bound;

  const auto off = block_offsets(sys);
  std::map<State, ElemId> index;
  std::vector<State> states;

  states.push_back(identity_state(sys));
  index.emplace(states[0], 0);
  t.words_.push_back({});
  t.right_.assign(size_t(t.rank_), npos);

  // Breadth-first by length; scanning parents in id order and generators in
  // increasing order assigns ids in (length, shortlex) order and makes the
  // stored word the shortlex-least reduced word.
  size_t layer_begin = 0, layer_end = 1;
  int len = 0;
  bool closed = false;
  while (!closed && (!bound || len < *bound)) {
    closed = true;
    for (size_t w = layer_begin; w < layer_end; ++w) {
      for (GenIdx s = 0; s < t.rank_; ++s) {
        if (t.right_[w * size_t(t.rank_) + size_t(s)] != npos) continue;
        State ns = mult_right(sys, off, states[w], s);
        auto it = index.find(ns);
        if (it != index.end()) {
          t.right_[w * size_t(t.rank_) + size_t(s)] = it->second;
          t.right_[size_t(it->second) * size_t(t.rank_) + size_t(s)] = ElemId(w);
          continue;
        }
        if (states.size() >= max_elements)
          throw LimitExceeded("element cap " + std::to_string(max_elements) +
                              " reached while enumerating " + sys.description());
        ElemId id = ElemId(states.size());
        index.emplace(ns, id);
        states.push_back(std::move(ns));
        std::vector<GenIdx> word = t.words_[w];
        word.push_back(s);
        t.words_.push_back(std::move(word));
        t.right_.insert(t.right_.end(), size_t(t.rank_), npos);
        t.right_[w * size_t(t.rank_) + size_t(s)] = id;
        t.right_[size_t(id) * size_t(t.rank_) + size_t(s)] = ElemId(w);
        closed = false;
      }
    }
    layer_begin = layer_end;
    layer_end = states.size();
    ++len;
  }
  // The table is complete when no product leaves it; this also recognizes a
  // length bound that happens to equal the diameter of a finite group.
  t.complete_ = std::none_of(t.right_.begin(), t.right_.end(),
                             [](ElemId x) { return x == npos; });

  const ElemId n = ElemId(states.size());
  // Left Cayley table via the realization.
  t.left_.assign(size_t(n) * size_t(t.rank_), npos);
  for (GenIdx s = 0; s < t.rank_; ++s) {
    // s * w: multiply the reversed construction; use state lookup.
    for (ElemId w = 0; w < n; ++w) {
      // Build state of s*w as gen_s * state_w: equivalent to right
      // multiplication in the opposite group; compute directly per block.
      size_t bi = 0;
      const auto& b = block_of(sys, s, bi);
      State ns = states[w];
      const int local = s - b.first_gen;
      if (b.is_perm) {
        const auto& sig = b.perm[size_t(local)];
        long long* p = ns.data() + off[bi];
        for (int i = 0; i < b.pts; ++i) p[i] = sig[size_t(p[i])];
      } else {
        const int nn = b.dim;
        const auto& gm = b.mat[size_t(local)];
        const long long* c = states[w].data() + off[bi];
        long long* p = ns.data() + off[bi];
        for (int i = 0; i < nn; ++i)
          for (int j = 0; j < nn; ++j)
            p[size_t(i) * nn + j] = checked_dot(&gm[size_t(i) * nn], &c[size_t(j)], nn, nn);
      }
      auto it = index.find(ns);
      if (it != index.end()) t.left_[size_t(w) * size_t(t.rank_) + size_t(s)] = it->second;
    }
  }

  // Inverses and the star map act within length fibers, hence stay in the ball.
  t.inverse_.resize(n);
  t.star_elem_.resize(n);
  const auto& star = sys.star();
  for (ElemId w = 0; w < n; ++w) {
    ElemId inv = 0, st = 0;
    const auto& word = t.words_[w];
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      inv = t.right_[size_t(inv) * size_t(t.rank_) + size_t(*it)];
    for (GenIdx s : word) st = t.right_[size_t(st) * size_t(t.rank_) + size_t(star(s))];
    t.inverse_[w] = inv;
    t.star_elem_[w] = st;
  }
  return t;
}

std::string GroupTable::word_str(ElemId w) const {
  return sys_->word_string(words_[w]);
}

ElemId GroupTable::mult(ElemId a, ElemId b) const {
  ElemId r = a;
  for (GenIdx s : words_[b]) {
    r = right(r, s);
    if (r == npos)
      throw BallExceeded("product leaves the enumerated ball");
  }
  return r;
}

ElemId GroupTable::element_by_word(const std::vector<GenIdx>& w) const {
  ElemId r = 0;
  for (GenIdx s : w) {
    if (s < 0 || s >= rank_) throw InvalidMatrix("generator index out of range");
    r = right(r, s);
    if (r == npos) throw BallExceeded("word leaves the enumerated ball");
  }
  return r;
}

ElemId GroupTable::longest() const {
  if (!complete_)
    throw InfiniteGroupFullEnumeration(
        "longest element requires a complete finite table");
  ElemId w0 = size() - 1;
  if (size() >= 2 && length(w0 - 1) == length(w0))
    throw InvalidMatrix("longest element is not unique");  // unreachable for valid W
  return w0;
}

std::vector<ElemId> GroupTable::twisted_involutions(int length_bound) const {
  std::vector<ElemId> out;
  for (ElemId w = 0; w < size(); ++w) {
    if (length_bound >= 0 && length(w) > length_bound) break;
    if (star_elem_[w] == inverse_[w]) out.push_back(w);
  }
  return out;
}

}  // namespace cox
