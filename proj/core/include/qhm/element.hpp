#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qhm/params.hpp"

namespace qhm {

/// A truncated element of the smooth algebra.
///
/// The function Phi(x, y, p) = sum_n phi_{p,n}(x) e(n y) is stored through
/// the samples phi_{p,n}(i / Nx) on one fundamental domain [0,1). Values at
/// other x are recovered from the twist rule, which in components is the
/// frequency shift
///
///     phi_{p,n}(x0 + k) = phi_{p, n - c k p}(x0),
///
/// so integer translations are exact and only fractional shifts go through
/// the interpolation stencil. Indices leaving |n| <= N read as zero.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(const AlgebraParams& params, const Truncation& trunc);

  const AlgebraParams& params() const { return params_; }
  const Truncation& trunc() const { return trunc_; }

  bool in_band(int p, int n) const {
    return p >= -trunc_.P && p <= trunc_.P && n >= -trunc_.N && n <= trunc_.N;
  }

  cplx at(int p, int n, int i) const { return data_[offset(p, n) + i]; }
  cplx& at(int p, int n, int i) { return data_[offset(p, n) + i]; }

  std::span<const cplx> component(int p, int n) const {
    return {data_.data() + offset(p, n), static_cast<std::size_t>(trunc_.Nx)};
  }
  std::span<cplx> component(int p, int n) {
    return {data_.data() + offset(p, n), static_cast<std::size_t>(trunc_.Nx)};
  }

  /// phi_{p,n} at global node j (x = j / Nx, any integer j), via the twist.
  cplx fetch(int p, int n, long j) const;

  /// True when phi_{p,n} has a nonzero sample anywhere in [0,1).
  bool component_nonzero(int p, int n) const;

  std::span<const cplx> coefficients() const { return data_; }
  std::span<cplx> coefficients() { return data_; }

  bool same_space(const AlgebraElement& other) const {
    return params_ == other.params_ && trunc_ == other.trunc_;
  }

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  std::size_t offset(int p, int n) const {
    return (static_cast<std::size_t>(p + trunc_.P) * trunc_.n_count() +
            static_cast<std::size_t>(n + trunc_.N)) *
           trunc_.Nx;
  }

  AlgebraParams params_{};
  Truncation trunc_{};
  std::vector<cplx> data_;
};

/// Gaussian profile placed in a single momentum sector p != 0.
struct ZakProfile {
  int p = 1;
  double center = 0.5;
  double width = 0.2;
  std::map<int, cplx> h_coeffs;  // y-Fourier coefficients of h(y)
};

struct ZakBuild {
  AlgebraElement element;
  bool band_truncated = false;
  double discarded_mass = 0.0;
};

AlgebraElement zero_element(const AlgebraParams& params, const Truncation& trunc);
AlgebraElement identity(const AlgebraParams& params, const Truncation& trunc);

/// e(m x + n y) in the p = 0 sector.
AlgebraElement fourier_element(const AlgebraParams& params, const Truncation& trunc,
                               int m, int n);

/// Phi(x, y, p0) = sum_k g(x - k) e(c k p0 y) h(y) with
/// g(u) = exp(-pi ((u - center) / width)^2). In components,
///
///     phi_{p0,n}(x) = sum_{|k| <= kZakCutoff} g(x - k) hhat_{n - c k p0},
///
/// which satisfies the twist identity term by term. Terms whose Gaussian
/// factor stays below 1e-20 on [0,1] are not materialized.
ZakBuild zak_element_checked(const AlgebraParams& params, const Truncation& trunc,
                             const ZakProfile& profile);
AlgebraElement zak_element(const AlgebraParams& params, const Truncation& trunc,
                           const ZakProfile& profile);

inline constexpr int kZakCutoff = 8;

AlgebraElement linear_combine(std::span<const cplx> coeffs,
                              std::span<const AlgebraElement> elems);

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(cplx s, const AlgebraElement& a);
AlgebraElement& operator+=(AlgebraElement& a, const AlgebraElement& b);
AlgebraElement& operator-=(AlgebraElement& a, const AlgebraElement& b);

/// Re-embed into a different (P, N) window with the same grid; components
/// outside the target window are dropped.
AlgebraElement retruncate(const AlgebraElement& a, const Truncation& target);

/// phi_{p,n}(x) for arbitrary real x.
cplx eval_component(const AlgebraElement& a, int p, int n, double x);

/// Phi(x, y, p); zero outside the momentum window.
cplx eval(const AlgebraElement& a, double x, double y, int p);

/// Samples phi_{p,n}(i/Nx - shift) for i in [0, Nx), written to out.
void sample_shifted(const AlgebraElement& a, int p, int n, double shift,
                    std::span<cplx> out);

/// Transpose of sample_shifted: adds sum_i w * g[i] into the stored nodes.
void sample_shifted_transpose(AlgebraElement& target, int p, int n, double shift,
                              std::span<const cplx> g);

AlgebraElement involution(const AlgebraElement& a);

/// tau(Phi): mean of phi_{0,0} on the grid.
cplx trace(const AlgebraElement& a);

/// sqrt(tau(Phi* Phi)) evaluated as sqrt((1/Nx) sum |coeff|^2). The two agree
/// because sum_n |phi_{q,n}(x)|^2 is 1-periodic, so the shifts in the product
/// integrate out.
double l2_norm(const AlgebraElement& a);

/// Heuristic operator-norm bound sum_p max_i sum_n |coeff|. Not a certified bound.
double sup_bound(const AlgebraElement& a);

/// max over (p,n) of |one-sided extrapolation of phi_{p,n} to x = 1 minus
/// phi_{p,n-cp}(0)|.
double seam_residual(const AlgebraElement& a);

/// max |a - b| over coefficients; both must share a space.
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

}  // namespace qhm
