#pragma once

// Iwahori-Hecke algebra over Z[u,u^-1] in the T basis, attached to an
// enumerated group ball:
//   T_s T_w = T_{sw}                      if l(sw) > l(w),
//   T_s T_w = (u^2-1) T_w + u^2 T_{sw}    if l(sw) < l(w),
// i.e. (T_s + 1)(T_s - u^2) = 0.

#include "coxeter.hpp"
#include "laurent.hpp"

#include <map>

namespace hecke {

using laurent::Laurent;

// Sparse element sum_w c_w T_w, keyed by element id; zero coefficients are
// never stored.
class HeckeElt {
 public:
  HeckeElt() = default;
  static HeckeElt t(cox::ElemId w) {
    HeckeElt h;
    h.c_.emplace(w, Laurent(1));
    return h;
  }

  bool is_zero() const { return c_.empty(); }
  const std::map<cox::ElemId, Laurent>& terms() const { return c_; }
  Laurent coeff(cox::ElemId w) const {
    auto it = c_.find(w);
    return it == c_.end() ? Laurent() : it->second;
  }
  void add_term(cox::ElemId w, const Laurent& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = c_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  HeckeElt& operator+=(const HeckeElt& o) {
    for (const auto& [w, c] : o.c_) add_term(w, c);
    return *this;
  }
  HeckeElt& operator-=(const HeckeElt& o) {
    for (const auto& [w, c] : o.c_) add_term(w, -c);
    return *this;
  }
  HeckeElt& operator*=(const Laurent& f) {
    if (f.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& [w, c] : c_) c *= f;
    return *this;
  }
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const Laurent& f, HeckeElt h) { return h *= f; }
  friend bool operator==(const HeckeElt&, const HeckeElt&) = default;

 private:
  std::map<cox::ElemId, Laurent> c_;
};

// h * T_s and T_s * h.  Throws cox::BallExceeded when a product leaves an
// incomplete ball.
HeckeElt mul_gen_right(const cox::GroupTable& g, const HeckeElt& h,
                       cox::GenIdx s);
HeckeElt mul_gen_left(const cox::GroupTable& g, cox::GenIdx s,
                      const HeckeElt& h);
// Full product a * b.
HeckeElt mul(const cox::GroupTable& g, const HeckeElt& a, const HeckeElt& b);

// Coefficient of T_1.
Laurent tau(const HeckeElt& h);
// tau(T_x T_y T_z) = u^{2 l(z)} * [coefficient of T_{z^-1} in T_x T_y].
Laurent tau_triple(const cox::GroupTable& g, cox::ElemId x, cox::ElemId y,
                   cox::ElemId z);

// The antiautomorphism T_w -> T_{w^-1}.
HeckeElt antiauto(const cox::GroupTable& g, const HeckeElt& h);

// Bar involution: u -> u^-1 on coefficients and T_w -> (T_{w^-1})^{-1}.
HeckeElt bar(const cox::GroupTable& g, const HeckeElt& h);

// sum of u^{-l(x)} T_x over the star-fixed elements x (x* = x) of the ball.
HeckeElt star_fixed_sum(const cox::GroupTable& g);

// Matrix of left multiplication by h in the T basis (complete tables only);
// entry (v, w) is the coefficient of T_v in h * T_w.
laurent::PolyMatrix left_mult_matrix(const cox::GroupTable& g,
                                     const HeckeElt& h);

}  // namespace hecke
