#include "qhm/element.hpp"

#include <algorithm>
#include <cmath>

#include "qhm/stencil.hpp"

namespace qhm {
namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool constant_periodic(const AlgebraElement& a, int p, int n) {
  if (p != 0) return false;
  auto comp = a.component(p, n);
  return std::all_of(comp.begin(), comp.end(), [&](cplx v) { return v == comp[0]; });
}

void require_same_space(const AlgebraElement& a, const AlgebraElement& b, const char* what) {
  if (!a.same_space(b))
    throw ConfigError(std::string(what) + ": elements do not share params and truncation");
}

}  // namespace

AlgebraElement::AlgebraElement(const AlgebraParams& params, const Truncation& trunc)
    : params_(params), trunc_(trunc) {
  params_.validate();
  trunc_.validate();
  data_.assign(trunc_.size(), cplx{0.0, 0.0});
}

cplx AlgebraElement::fetch(int p, int n, long j) const {
  const long nx = trunc_.Nx;
  const long k = floor_div(j, nx);
  const long jj = j - k * nx;
  const long shifted = static_cast<long>(n) - k * params_.c * p;
  if (shifted < -trunc_.N || shifted > trunc_.N) return {0.0, 0.0};
  return at(p, static_cast<int>(shifted), static_cast<int>(jj));
}

bool AlgebraElement::component_nonzero(int p, int n) const {
  auto comp = component(p, n);
  return std::any_of(comp.begin(), comp.end(),
                     [](cplx v) { return v.real() != 0.0 || v.imag() != 0.0; });
}

AlgebraElement zero_element(const AlgebraParams& params, const Truncation& trunc) {
  return AlgebraElement(params, trunc);
}

AlgebraElement identity(const AlgebraParams& params, const Truncation& trunc) {
  AlgebraElement a(params, trunc);
  for (auto& v : a.component(0, 0)) v = 1.0;
  return a;
}

AlgebraElement fourier_element(const AlgebraParams& params, const Truncation& trunc,
                               int m, int n) {
  AlgebraElement a(params, trunc);
  if (n < -trunc.N || n > trunc.N)
    throw ConfigError("fourier_element: |n| exceeds the frequency band");
  if (trunc.Nx < trunc.interp_order * (std::abs(m) + 1))
    throw ConfigError("fourier_element: Nx too small to resolve e(m x)");
  auto comp = a.component(0, n);
  for (int i = 0; i < trunc.Nx; ++i) {
    // reduce m*i modulo Nx so the phase argument stays in [0,1)
    const long r = floor_div(static_cast<long>(m) * i, trunc.Nx) * trunc.Nx;
    comp[i] = unit_phase(static_cast<double>(static_cast<long>(m) * i - r) / trunc.Nx);
  }
  return a;
}

ZakBuild zak_element_checked(const AlgebraParams& params, const Truncation& trunc,
                             const ZakProfile& profile) {
  if (profile.p == 0) throw ConfigError("zak_element: profile momentum must be nonzero");
  if (std::abs(profile.p) > trunc.P)
    throw ConfigError("zak_element: profile momentum outside the window");
  if (!(profile.width > 0.0) || !std::isfinite(profile.width) ||
      !std::isfinite(profile.center))
    throw ConfigError("zak_element: width must be positive and finite");

  ZakBuild out{AlgebraElement(params, trunc), false, 0.0};
  if (profile.h_coeffs.empty()) return out;

  const double w = profile.width;
  auto g = [&](double u) {
    const double z = (u - profile.center) / w;
    return std::exp(-std::numbers::pi * z * z);
  };
  // largest value of g(x - k) for x in [0,1]
  auto gmax = [&](int k) { return g(std::clamp(profile.center + k, 0.0, 1.0) - k); };

  if (gmax(kZakCutoff + 1) > 1e-12 || gmax(-kZakCutoff - 1) > 1e-12)
    throw ConfigError("zak_element: width too large for the translate cutoff");

  const int nx = trunc.Nx;
  double discarded = 0.0;
  for (int k = -kZakCutoff; k <= kZakCutoff; ++k) {
    if (gmax(k) < 1e-20) continue;
    std::vector<double> gk(nx);
    for (int i = 0; i < nx; ++i) gk[i] = g(static_cast<double>(i) / nx - k);
    for (const auto& [m, hm] : profile.h_coeffs) {
      const long n = static_cast<long>(m) + static_cast<long>(params.c) * k * profile.p;
      if (n < -trunc.N || n > trunc.N) {
        for (int i = 0; i < nx; ++i) discarded += std::norm(gk[i] * hm);
        out.band_truncated = true;
        continue;
      }
      auto comp = out.element.component(profile.p, static_cast<int>(n));
      for (int i = 0; i < nx; ++i) comp[i] += gk[i] * hm;
    }
  }
  out.discarded_mass = std::sqrt(discarded / nx);
  return out;
}

AlgebraElement zak_element(const AlgebraParams& params, const Truncation& trunc,
                           const ZakProfile& profile) {
  return zak_element_checked(params, trunc, profile).element;
}

AlgebraElement linear_combine(std::span<const cplx> coeffs,
                              std::span<const AlgebraElement> elems) {
  if (coeffs.size() != elems.size() || elems.empty())
    throw ConfigError("linear_combine: coefficient and element counts differ");
  AlgebraElement out(elems[0].params(), elems[0].trunc());
  auto dst = out.coefficients();
  for (std::size_t e = 0; e < elems.size(); ++e) {
    require_same_space(elems[0], elems[e], "linear_combine");
    auto src = elems[e].coefficients();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += coeffs[e] * src[k];
  }
  return out;
}

AlgebraElement& operator+=(AlgebraElement& a, const AlgebraElement& b) {
  require_same_space(a, b, "operator+=");
  auto dst = a.coefficients();
  auto src = b.coefficients();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  return a;
}

AlgebraElement& operator-=(AlgebraElement& a, const AlgebraElement& b) {
  require_same_space(a, b, "operator-=");
  auto dst = a.coefficients();
  auto src = b.coefficients();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= src[k];
  return a;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  out += b;
  return out;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  out -= b;
  return out;
}

AlgebraElement operator*(cplx s, const AlgebraElement& a) {
  AlgebraElement out = a;
  for (auto& v : out.coefficients()) v *= s;
  return out;
}

AlgebraElement retruncate(const AlgebraElement& a, const Truncation& target) {
  if (target.Nx != a.trunc().Nx || target.interp_order != a.trunc().interp_order)
    throw ConfigError("retruncate: grid must match");
  AlgebraElement out(a.params(), target);
  const int P = std::min(target.P, a.trunc().P);
  const int N = std::min(target.N, a.trunc().N);
  for (int p = -P; p <= P; ++p)
    for (int n = -N; n <= N; ++n) {
      auto src = a.component(p, n);
      std::copy(src.begin(), src.end(), out.component(p, n).begin());
    }
  return out;
}

cplx eval_component(const AlgebraElement& a, int p, int n, double x) {
  const auto& tr = a.trunc();
  if (p < -tr.P || p > tr.P) return {0.0, 0.0};
  if (constant_periodic(a, p, n)) return a.at(p, n, 0);
  const double u = x * tr.Nx;
  const double fl = std::floor(u);
  const long jb = static_cast<long>(fl);
  const double t = u - fl;
  if (t == 0.0) return a.fetch(p, n, jb);
  const auto w = lagrange_weights(tr.interp_order, t);
  const int first = lagrange_first_node(tr.interp_order);
  cplx acc{0.0, 0.0};
  for (int s = 0; s < tr.interp_order; ++s) acc += w[s] * a.fetch(p, n, jb + first + s);
  return acc;
}

cplx eval(const AlgebraElement& a, double x, double y, int p) {
  const auto& tr = a.trunc();
  if (p < -tr.P || p > tr.P) return {0.0, 0.0};
  cplx acc{0.0, 0.0};
  for (int n = -tr.N; n <= tr.N; ++n) {
    const cplx v = eval_component(a, p, n, x);
    if (v == cplx{0.0, 0.0}) continue;
    acc += v * unit_phase(n * y);
  }
  return acc;
}

void sample_shifted(const AlgebraElement& a, int p, int n, double shift,
                    std::span<cplx> out) {
  const auto& tr = a.trunc();
  const int nx = tr.Nx;
  if (constant_periodic(a, p, n)) {
    std::fill(out.begin(), out.end(), a.at(p, n, 0));
    return;
  }
  const double u = -shift * nx;
  const double fl = std::floor(u);
  const long jb = static_cast<long>(fl);
  const double t = u - fl;
  if (t == 0.0) {
    if (jb == 0) {
      auto comp = a.component(p, n);
      std::copy(comp.begin(), comp.end(), out.begin());
    } else {
      for (int i = 0; i < nx; ++i) out[i] = a.fetch(p, n, i + jb);
    }
    return;
  }
  const int order = tr.interp_order;
  const auto w = lagrange_weights(order, t);
  const long j0 = jb + lagrange_first_node(order);
  std::vector<cplx> line(nx + order);
  for (int k = 0; k < nx + order; ++k) line[k] = a.fetch(p, n, j0 + k);
  for (int i = 0; i < nx; ++i) {
    cplx acc{0.0, 0.0};
    for (int s = 0; s < order; ++s) acc += w[s] * line[i + s];
    out[i] = acc;
  }
}

void sample_shifted_transpose(AlgebraElement& target, int p, int n, double shift,
                              std::span<const cplx> g) {
  const auto tr = target.trunc();
  const int nx = tr.Nx;
  const long c = target.params().c;
  auto scatter = [&](long j, cplx v) {
    const long k = floor_div(j, nx);
    const long jj = j - k * nx;
    const long shifted = static_cast<long>(n) - k * c * p;
    if (shifted < -tr.N || shifted > tr.N) return;
    target.at(p, static_cast<int>(shifted), static_cast<int>(jj)) += v;
  };
  const double u = -shift * nx;
  const double fl = std::floor(u);
  const long jb = static_cast<long>(fl);
  const double t = u - fl;
  if (t == 0.0) {
    for (int i = 0; i < nx; ++i) scatter(i + jb, g[i]);
    return;
  }
  const int order = tr.interp_order;
  const auto w = lagrange_weights(order, t);
  const long j0 = jb + lagrange_first_node(order);
  std::vector<cplx> line(nx + order, cplx{0.0, 0.0});
  for (int i = 0; i < nx; ++i)
    for (int s = 0; s < order; ++s) line[i + s] += w[s] * g[i];
  for (int k = 0; k < nx + order; ++k) scatter(j0 + k, line[k]);
}

AlgebraElement involution(const AlgebraElement& a) {
  AlgebraElement out(a.params(), a.trunc());
  const auto& tr = a.trunc();
  for (int p = -tr.P; p <= tr.P; ++p)
    for (int n = -tr.N; n <= tr.N; ++n) {
      auto src = a.component(-p, -n);
      auto dst = out.component(p, n);
      for (int i = 0; i < tr.Nx; ++i) dst[i] = std::conj(src[i]);
    }
  return out;
}

cplx trace(const AlgebraElement& a) {
  cplx acc{0.0, 0.0};
  for (cplx v : a.component(0, 0)) acc += v;
  return acc / static_cast<double>(a.trunc().Nx);
}

double l2_norm(const AlgebraElement& a) {
  double acc = 0.0;
  for (cplx v : a.coefficients()) acc += std::norm(v);
  return std::sqrt(acc / a.trunc().Nx);
}

double sup_bound(const AlgebraElement& a) {
  const auto& tr = a.trunc();
  double total = 0.0;
  for (int p = -tr.P; p <= tr.P; ++p) {
    double best = 0.0;
    for (int i = 0; i < tr.Nx; ++i) {
      double col = 0.0;
      for (int n = -tr.N; n <= tr.N; ++n) col += std::abs(a.at(p, n, i));
      best = std::max(best, col);
    }
    total += best;
  }
  return total;
}

double seam_residual(const AlgebraElement& a) {
  const auto& tr = a.trunc();
  const int order = tr.interp_order;
  const auto w = extrapolation_weights(order);
  double worst = 0.0;
  for (int p = -tr.P; p <= tr.P; ++p)
    for (int n = -tr.N; n <= tr.N; ++n) {
      auto comp = a.component(p, n);
      cplx extrap{0.0, 0.0};
      for (int s = 0; s < order; ++s) extrap += w[s] * comp[tr.Nx - order + s];
      const cplx across = a.fetch(p, n, tr.Nx);
      worst = std::max(worst, std::abs(extrap - across));
    }
  return worst;
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_space(a, b, "max_abs_diff");
  auto x = a.coefficients();
  auto y = b.coefficients();
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  return worst;
}

}  // namespace qhm
