#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qhm {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e(x) = exp(2 pi i x). Returns exactly 1 for x == 0.
inline cplx unit_phase(double x) {
  if (x == 0.0) return {1.0, 0.0};
  return std::polar(1.0, kTwoPi * x);
}

/// Thrown when parameters or truncations violate their invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computed quantity fails a consistency check it is
/// guaranteed to pass in exact arithmetic (e.g. a real value with a large
/// imaginary part).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deformation data of the algebra: bundle twist c, Planck constant hbar,
/// translation direction (mu, nu) and the metric scale alpha of the
/// Lie-algebra basis.
struct AlgebraParams {
  int c = 1;
  double hbar = 0.3791;
  double mu = 0.70710678118654752440;   // 1/sqrt(2)
  double nu = 0.57735026918962576451;   // 1/sqrt(3)
  double alpha = 2.0;

  void validate() const;
  friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

/// Finite window of the coefficient tensor: momenta |p| <= P, y-frequencies
/// |n| <= N, and Nx uniform x-nodes i/Nx on [0,1). interp_order is the
/// (even) number of nodes in the interpolation stencil.
struct Truncation {
  int P = 3;
  int N = 16;
  int Nx = 64;
  int interp_order = 8;

  void validate() const;

  int p_count() const { return 2 * P + 1; }
  int n_count() const { return 2 * N + 1; }
  std::size_t size() const {
    return static_cast<std::size_t>(p_count()) * n_count() * Nx;
  }
  double h() const { return 1.0 / Nx; }

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

std::string describe(const AlgebraParams& p);
std::string describe(const Truncation& t);

}  // namespace qhm
