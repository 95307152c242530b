#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qhm/forms.hpp"
#include "qhm/matrix.hpp"

namespace qhm {

/// Free right module A^q with <xi, eta> = sum_j xi_j* eta_j.
struct ModuleSpec {
  int q = 1;
};

using ModuleVector = std::vector<AlgebraElement>;

/// nabla_j xi = d_j xi + A_j xi with every A_j skew (A_j* = -A_j).
struct Connection {
  ModuleSpec spec;
  std::array<AlgebraMatrix, 3> A;
};

/// F_13, F_23, F_12 as matrices over the algebra.
struct CurvatureCR {
  AlgebraMatrix F13;
  AlgebraMatrix F23;
  AlgebraMatrix F12;
};

/// q x q matrix of one-forms, row-major.
struct FormMatrix {
  int q = 0;
  std::vector<OneForm> entries;

  OneForm& operator()(int k, int j) { return entries[k * q + j]; }
  const OneForm& operator()(int k, int j) const { return entries[k * q + j]; }
};

struct CurvatureSpectral {
  int q = 0;
  std::vector<TwoForm> entries;

  TwoForm& operator()(int m, int j) { return entries[m * q + j]; }
  const TwoForm& operator()(int m, int j) const { return entries[m * q + j]; }
};

inline constexpr double kSkewTolerance = 1e-12;
inline constexpr double kImagTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

AlgebraElement herm(const ModuleVector& xi, const ModuleVector& eta);

/// Checks skewness to kSkewTolerance, then stores (A - A*) / 2.
Connection make_connection(const ModuleSpec& spec, const AlgebraMatrix& A1,
                           const AlgebraMatrix& A2, const AlgebraMatrix& A3);
Connection flat_connection(const ModuleSpec& spec, const AlgebraParams& params,
                           const Truncation& trunc);

ModuleVector apply_connection(const Connection& conn, DerivationId j, const ModuleVector& xi);
/// i nabla_j.
ModuleVector apply_spectral(const Connection& conn, DerivationId j, const ModuleVector& xi);

/// Right multiplication xi a and left action M xi.
ModuleVector right_multiply(const ModuleVector& xi, const AlgebraElement& a);
ModuleVector apply_matrix(const AlgebraMatrix& m, const ModuleVector& xi);

CurvatureCR cr_curvature(const Connection& conn);

/// Real scalar that passed the imaginary-part check.
struct RealValue {
  double value = 0.0;
  double imag = 0.0;
  double scale = 1.0;
};

/// -tau~(F13^2 + F23^2 + F12^2), tau~ = tau composed with the unnormalized
/// matrix trace. Throws NumericalError if the imaginary part exceeds
/// kImagTolerance * scale.
RealValue ym_cr_checked(const Connection& conn);
RealValue ym_from_curvature(const CurvatureCR& f);
double ym_cr(const Connection& conn);

/// omega^{(kj)} with l-coordinate (i A_l)_{kj}.
FormMatrix to_spectral(const Connection& conn);

/// Theta_{mj} = d1form(omega^{(mj)}) + sum_k mul11(omega^{(mk)}, omega^{(kj)}).
CurvatureSpectral spectral_theta(const FormMatrix& omega, const FormsConfig& cfg = {});

RealValue ym_spectral_checked(const CurvatureSpectral& theta, const FormsConfig& cfg = {});
double ym_spectral(const CurvatureSpectral& theta, const FormsConfig& cfg = {});

struct YMReport {
  double ym_cr = 0.0;
  double ym_spectral = 0.0;
  double ym_cr_imag = 0.0;
  double ym_spectral_imag = 0.0;
  double c_d = 1.0;
  double predicted_ratio = 0.5;
  /// |ym_spectral - (C_D/2) ym_cr| / (1 + |ym_cr|)
  double residual = 0.0;
  int q = 1;
  Truncation trunc;
  std::vector<std::uint64_t> seeds;
};

YMReport equivalence_report(const Connection& conn, const FormsConfig& cfg = {});

/// A_j -> u A_j u* + u d_j(u*) for q = 1; u must be unitary.
Connection gauge_transform(const Connection& conn, const AlgebraElement& u);

}  // namespace qhm
