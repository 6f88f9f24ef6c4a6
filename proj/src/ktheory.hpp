#pragma once

// Equivariant K-theory of a finite group acting on itself by conjugation.
//
// The basis of K_Gamma(Gamma) is indexed by pairs (x, rho): x a conjugacy
// class representative and rho an irreducible character of its centralizer.
// This module computes the squaring-map direct image bundle V, the kappa
// element built from square roots, the characteristic functions phi on
// commuting pairs, the chi linear functionals, and the nonabelian Fourier
// bracket defined through chi.  All values are exact cyclotomics.

#include "groups.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kth {

using laurent::Rat;

// A bundle coefficient that should be a nonnegative integer is not.
struct NonIntegralCoefficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Basis class E_{x,rho}: conjugacy class of x, character index in the
// centralizer's table.
struct BasisPair {
  int cls = 0;
  int chr = 0;
};

class KContext {
 public:
  explicit KContext(grp::FiniteGroup gamma);

  const grp::FiniteGroup& group() const { return g_; }
  const grp::CycField& field() const { return field_; }

  int num_pairs() const { return int(pairs_.size()); }
  const BasisPair& pair(int i) const { return pairs_[size_t(i)]; }
  int pair_index(int cls, int chr) const {
    return pair_index_[size_t(cls)][size_t(chr)];
  }
  std::string pair_name(int i) const;
  const grp::Subgroup& centralizer(int cls) const {
    return cent_[size_t(cls)];
  }
  const grp::CharTable& centralizer_table(int cls) const {
    return tables_[size_t(cls)];
  }

  // All (g, h) with gh = hg, in lexicographic order.
  const std::vector<std::pair<int, int>>& commuting_pairs() const {
    return gh_;
  }

  // Trace of h on the fibre at g of E_{x,rho} (basis index i):
  // |Gamma_x|^-1 sum over a with a g a^-1 = x of the rho-character of
  // a h a^-1.  Zero unless g lies in the class of x.
  grp::Cyc phi_basis(int i, int g, int h) const;
  grp::Cyc phi_bundle(const std::vector<Rat>& coeffs, int g, int h) const;
  // |{s : s^2 = g, sh = hs}|; this equals phi of the direct image bundle.
  long square_root_count(int g, int h) const;

  // kappa = sum over (x,rho) and square roots s of x of
  // (weight / |Gamma_x|) * (multiplicity of the trivial character in rho
  // restricted to Z_{Gamma_x}(s)) * E_{x,rho}, where the weight is
  // |Z_{Gamma_x}(s)| (kRootCentralizer) or |Z(Gamma_x)| (kCenter).
  enum class KappaReading { kRootCentralizer, kCenter };
  std::vector<Rat> kappa_coeffs(KappaReading r) const;
  // Validated integral coefficients; throws NonIntegralCoefficient.
  std::vector<long> kottwitz_kappa(
      KappaReading r = KappaReading::kRootCentralizer) const;
  // V = direct image of the constant sheaf under g -> g^2: for each class
  // representative x, the permutation character of Gamma_x on the square
  // roots of x, decomposed into irreducibles.
  std::vector<long> direct_image() const;

  // chi_{y,sigma}(U) = (dim sigma)^-1 sum over gamma in Gamma_y of
  // phi_U(gamma, y) * sigma(gamma).
  grp::Cyc chi_pairing(int y_cls, int sigma,
                       const std::vector<Rat>& coeffs) const;
  grp::Cyc chi_pairing_basis(int y_cls, int sigma, int i) const;

  // Nonabelian Fourier bracket {pair_i, pair_j}, defined through chi:
  // {(x,rho),(y,tau)} = (dim tau / |Gamma_y|) chi_{y,tau*}(E_{x,rho}).
  grp::Cyc fourier_bracket(int i, int j) const;

  // Whether coefficients -> phi is injective: the evaluation matrix of all
  // basis phi functions on all commuting pairs has full row rank over Q.
  bool phi_injective() const;

  // kappa (root-centralizer reading) equals V coefficientwise, and their
  // phi functions agree pointwise with the square-root count.
  bool verify_prop32() const;

 private:
  grp::FiniteGroup g_;
  grp::CycField field_;  // Q(zeta_N), N the exponent of the group
  std::vector<grp::Subgroup> cent_;     // per conjugacy class
  std::vector<grp::CharTable> tables_;  // per conjugacy class
  std::vector<BasisPair> pairs_;
  std::vector<std::vector<int>> pair_index_;
  std::vector<std::pair<int, int>> gh_;
};

}  // namespace kth
