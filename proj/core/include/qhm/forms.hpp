#pragma once

#include <array>

#include "qhm/element.hpp"

namespace qhm {

/// Result of sigma_j sigma_k: coeff * sigma_index, or coeff * identity when
/// index == 0.
struct PauliProduct {
  cplx coeff;
  int index;
};

PauliProduct pauli_mul(int j, int k);

/// sum_j a_j (x) sigma_j.
struct OneForm {
  std::array<AlgebraElement, 3> a;

  AlgebraElement& operator[](int j) { return a[j - 1]; }
  const AlgebraElement& operator[](int j) const { return a[j - 1]; }
};

/// sigma-coordinates b_1, b_2, b_3 of the traceless representative; the
/// identity part is annihilated in two-forms and never stored.
struct TwoForm {
  std::array<AlgebraElement, 3> b;

  AlgebraElement& operator[](int j) { return b[j - 1]; }
  const AlgebraElement& operator[](int j) const { return b[j - 1]; }
};

struct FormsConfig {
  double C_D = 1.0;
  /// Debug switch used only by negative controls: flips the sign of the
  /// alpha term of d1form.
  bool flip_alpha_sign = false;

  void validate() const;
};

OneForm zero_one_form(const AlgebraParams& params, const Truncation& trunc);
TwoForm zero_two_form(const AlgebraParams& params, const Truncation& trunc);

OneForm operator+(const OneForm& x, const OneForm& y);
OneForm operator-(const OneForm& x, const OneForm& y);
TwoForm operator+(const TwoForm& x, const TwoForm& y);
TwoForm operator-(const TwoForm& x, const TwoForm& y);
TwoForm operator*(cplx s, const TwoForm& x);

/// (delta_1 a, delta_2 a, delta_3 a).
OneForm d0(const AlgebraElement& a);

/// b_l = sum over j != k with sigma_j sigma_k = coeff sigma_l of
/// coeff * (omega_j star eta_k).
TwoForm mul11(const OneForm& omega, const OneForm& eta);

/// Exterior differential on one-forms:
///   a_1: b_3 -= i delta_2 a_1,  b_2 += i delta_3 a_1
///   a_2: b_3 += i delta_1 a_2,  b_1 -= i delta_3 a_2
///   a_3: b_2 -= i delta_1 a_3,  b_1 += i delta_2 a_3,  b_3 -= a_3 / alpha
TwoForm d1form(const OneForm& omega, const FormsConfig& cfg = {});

/// Left multiplication of every coordinate by a.
OneForm scale(const AlgebraElement& a, const OneForm& omega);

/// (C_D / 2) sum_j tau(x_j* y_j): the scalar trace (1/2) C_D tau applied to
/// each sigma coordinate.
cplx two_form_inner(const TwoForm& x, const TwoForm& y, const FormsConfig& cfg = {});

/// max over coordinates of l2_norm.
double max_l2(const TwoForm& x);
double max_l2(const OneForm& x);

}  // namespace qhm
