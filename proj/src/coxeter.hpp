#pragma once

// Coxeter systems (W, S) with a diagram involution, and exact enumeration of
// balls {w : l(w) <= bound} (or all of W when finite).
//
// Elements are deduplicated through a faithful exact realization: each
// irreducible factor acts either on its root lattice by integer reflection
// matrices (crystallographic types, including affine ones) or on the vertices
// of a regular polygon (I2(m) for general m).  The canonical handle of an
// element is its id in enumeration order, which is sorted by
// (length, shortlex reduced word); the stored word is the shortlex-least
// reduced word.

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cox {

using GenIdx = int;
using ElemId = std::uint32_t;
inline constexpr ElemId npos = std::numeric_limits<ElemId>::max();

// Malformed Coxeter matrix or unsupported/ill-formed type string.
struct InvalidMatrix : std::runtime_error {
  explicit InvalidMatrix(const std::string& w) : std::runtime_error(w) {}
};
// Star map is not a diagram involution of the system.
struct InvalidStar : std::runtime_error {
  explicit InvalidStar(const std::string& w) : std::runtime_error(w) {}
};
// Full enumeration requested for an infinite group.
struct InfiniteGroupFullEnumeration : std::runtime_error {
  explicit InfiniteGroupFullEnumeration(const std::string& w)
      : std::runtime_error(w) {}
};
// An operation needed an element outside the enumerated ball.
struct BallExceeded : std::runtime_error {
  explicit BallExceeded(const std::string& w) : std::runtime_error(w) {}
};
// A configured size cap was hit.
struct LimitExceeded : std::runtime_error {
  explicit LimitExceeded(const std::string& w) : std::runtime_error(w) {}
};

// Symmetric matrix of bond orders; m(i,i) = 1, off-diagonal entries are
// >= 2 or 0, where 0 encodes infinity.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(int rank) : rank_(rank), m_(size_t(rank) * rank, 2) {
    for (int i = 0; i < rank; ++i) set(i, i, 1);
  }
  int rank() const { return rank_; }
  int m(int i, int j) const { return m_[size_t(i) * rank_ + j]; }
  void set(int i, int j, int v) {
    m_[size_t(i) * rank_ + j] = v;
    m_[size_t(j) * rank_ + i] = v;
  }
  void validate() const;
  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_ = 0;
  std::vector<int> m_;
};

// Diagram involution: a permutation of the generators with star^2 = id that
// preserves all bond orders.
struct StarMap {
  std::vector<GenIdx> perm;
  GenIdx operator()(GenIdx s) const { return perm[size_t(s)]; }
  bool is_identity() const {
    for (size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != GenIdx(i)) return false;
    return true;
  }
  static StarMap identity(int rank) {
    StarMap st;
    st.perm.resize(size_t(rank));
    for (int i = 0; i < rank; ++i) st.perm[size_t(i)] = i;
    return st;
  }
};

class CoxeterSystem {
 public:
  // Type strings: "A2", "B3", "D4", "E6", "F4", "G2", "I2(7)", affine forms
  // "A1~", "A2~", "B3~", "D4~", "G2~", "F4~", "E6~", and products joined
  // with "x", e.g. "A2xA2".  Ranks: A>=1, B>=2, D>=4, E=6, F=4, G=2,
  // I2(m>=2); affine requires A>=1, B>=2, D>=4, G=2, F=4, E=6.
  static CoxeterSystem from_type(const std::string& type,
                                 std::optional<StarMap> star = std::nullopt);
  // Explicit matrix; every connected component must be crystallographic
  // (all bonds in {2,3,4,6,infinity}) or of rank <= 2.
  static CoxeterSystem from_matrix(const CoxeterMatrix& m,
                                   std::optional<StarMap> star = std::nullopt);
  // W x W with the factor-swapping involution.
  static CoxeterSystem product_square(const CoxeterSystem& sys);

  const CoxeterMatrix& matrix() const { return matrix_; }
  const StarMap& star() const { return star_; }
  int rank() const { return matrix_.rank(); }
  bool finite() const { return finite_; }
  const std::string& description() const { return description_; }

  // Letter used for generator s in rendered words.
  std::string letter(GenIdx s) const;
  std::string word_string(const std::vector<GenIdx>& w) const;

  // One exact realization block per irreducible-or-explicit factor.
  struct Block {
    bool is_perm = false;
    GenIdx first_gen = 0;
    int n_gen = 0;
    int dim = 0;                                   // lattice block: dimension
    std::vector<std::vector<long long>> mat;       // per local generator
    int pts = 0;                                   // polygon block: vertices
    std::vector<std::vector<int>> perm;            // per local generator
  };
  const std::vector<Block>& blocks() const { return blocks_; }
  size_t state_size() const { return state_size_; }

 private:
  CoxeterSystem() = default;
  void set_star(std::optional<StarMap> star);
  void finish();  // derive blocks_, finite_, state_size_

  CoxeterMatrix matrix_;
  StarMap star_;
  bool finite_ = false;
  std::string description_;
  std::vector<Block> blocks_;
  size_t state_size_ = 0;
};

// Enumerated ball of W with Cayley tables.  Ids are assigned in
// (length, shortlex) order; id 0 is the identity.
class GroupTable {
 public:
  // bound: nullopt enumerates all of W (finite systems only).
  static GroupTable enumerate(const CoxeterSystem& sys,
                              std::optional<int> bound = std::nullopt,
                              size_t max_elements = 1000000);

  const CoxeterSystem& system() const { return *sys_; }
  ElemId size() const { return ElemId(words_.size()); }
  bool complete() const { return complete_; }  // all of W enumerated
  std::optional<int> bound() const { return bound_; }

  int length(ElemId w) const { return int(words_[w].size()); }
  const std::vector<GenIdx>& word(ElemId w) const { return words_[w]; }
  std::string word_str(ElemId w) const;

  // w*s and s*w; npos when the product lies outside the enumerated ball.
  ElemId right(ElemId w, GenIdx s) const {
    return right_[size_t(w) * rank_ + s];
  }
  ElemId left(GenIdx s, ElemId w) const { return left_[size_t(w) * rank_ + s]; }
  ElemId inverse(ElemId w) const { return inverse_[w]; }
  ElemId star_elem(ElemId w) const { return star_elem_[w]; }

  bool right_descent(ElemId w, GenIdx s) const {
    ElemId v = right(w, s);
    return v != npos && length(v) < length(w);
  }
  bool left_descent(GenIdx s, ElemId w) const {
    ElemId v = left(s, w);
    return v != npos && length(v) < length(w);
  }

  // Product inside the ball; throws BallExceeded if it leaves the ball.
  ElemId mult(ElemId a, ElemId b) const;
  ElemId element_by_word(const std::vector<GenIdx>& w) const;  // may throw

  // Unique longest element (complete finite tables only).
  ElemId longest() const;

  // {w : w* = w^-1}, optionally truncated to length <= bound, in id order.
  std::vector<ElemId> twisted_involutions(int length_bound = -1) const;

 private:
  GroupTable() = default;

  const CoxeterSystem* sys_ = nullptr;  // owned via shared storage below
  std::shared_ptr<const CoxeterSystem> sys_owner_;
  int rank_ = 0;
  bool complete_ = false;
  std::optional<int> bound_;
  std::vector<std::vector<GenIdx>> words_;
  std::vector<ElemId> right_, left_, inverse_, star_elem_;
};

}  // namespace cox
