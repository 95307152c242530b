#pragma once

#include "qhm/element.hpp"

namespace qhm {

/// Point (r, s, t) of the Heisenberg group realized on R^3 with
/// (r,s,t)(r',s',t') = (r + r', s + s', t + t' + c s r').
struct GroupElement {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement group_mul(const GroupElement& g, const GroupElement& h, int c);
GroupElement group_inv(const GroupElement& g, int c);

/// Index j in {1,2,3} of the orthonormal Lie-algebra basis X_1, X_2, X_3,
/// with [X_1, X_2] = -(1/alpha) X_3 and X_3 central.
class DerivationId {
 public:
  explicit DerivationId(int j);
  int value() const { return j_; }

 private:
  int j_;
};

/// exp(u X_j): (u,0,0), (0,u,0) or (0,0,c alpha u).
GroupElement exp_basis(DerivationId j, double u, int c, double alpha);

/// (L_g Phi)(x,y,p) = e(p (t + c s (x - r))) Phi(x - r, y - s, p).
/// Componentwise: e(p t + p c s (x - r) - n s) phi_{p,n}(x - r); no band growth.
AlgebraElement act(const GroupElement& g, const AlgebraElement& a);

/// d_j: d_1 = -d/dx (central finite differences across the seam),
/// d_2 multiplies component (p,n) by 2 pi i (c p x - n), d_3 by 2 pi i p c alpha.
AlgebraElement derive(DerivationId j, const AlgebraElement& a);

/// delta_j = i d_j.
AlgebraElement delta(DerivationId j, const AlgebraElement& a);

/// Adjoint of derive under the pairing Re sum conj(u) v; accumulates into out.
void derive_transpose_add(DerivationId j, const AlgebraElement& g, AlgebraElement& out);

}  // namespace qhm
