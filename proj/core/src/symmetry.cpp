#include "qhm/symmetry.hpp"

#include <vector>

#include "qhm/stencil.hpp"

namespace qhm {

GroupElement group_mul(const GroupElement& g, const GroupElement& h, int c) {
  return {g.r + h.r, g.s + h.s, g.t + h.t + c * g.s * h.r};
}

GroupElement group_inv(const GroupElement& g, int c) {
  return {-g.r, -g.s, -g.t + c * g.s * g.r};
}

DerivationId::DerivationId(int j) : j_(j) {
  if (j < 1 || j > 3) throw ConfigError("derivation index must be 1, 2 or 3");
}

GroupElement exp_basis(DerivationId j, double u, int c, double alpha) {
  switch (j.value()) {
    case 1: return {u, 0.0, 0.0};
    case 2: return {0.0, u, 0.0};
    default: return {0.0, 0.0, c * alpha * u};
  }
}

AlgebraElement act(const GroupElement& g, const AlgebraElement& a) {
  const auto& tr = a.trunc();
  const int c = a.params().c;
  AlgebraElement out(a.params(), tr);
  std::vector<cplx> shifted(tr.Nx);
  for (int p = -tr.P; p <= tr.P; ++p)
    for (int n = -tr.N; n <= tr.N; ++n) {
      sample_shifted(a, p, n, g.r, shifted);
      auto dst = out.component(p, n);
      for (int i = 0; i < tr.Nx; ++i) {
        if (shifted[i] == cplx{0.0, 0.0}) continue;
        const double x = static_cast<double>(i) / tr.Nx;
        const double arg = p * g.t + p * c * g.s * (x - g.r) - n * g.s;
        dst[i] = unit_phase(arg) * shifted[i];
      }
    }
  return out;
}

namespace {

cplx d2_factor(int c, int p, int n, double x) {
  return {0.0, kTwoPi * (c * p * x - n)};
}

cplx d3_factor(int c, double alpha, int p) { return {0.0, kTwoPi * p * c * alpha}; }

}  // namespace

AlgebraElement derive(DerivationId j, const AlgebraElement& a) {
  const auto& tr = a.trunc();
  const auto& prm = a.params();
  AlgebraElement out(prm, tr);
  switch (j.value()) {
    case 1: {
      const auto w = central_derivative_weights(tr.interp_order);
      const int r = tr.interp_order / 2;
      const double scale = -static_cast<double>(tr.Nx);
      std::vector<cplx> line(tr.Nx + 2 * r);
      for (int p = -tr.P; p <= tr.P; ++p)
        for (int n = -tr.N; n <= tr.N; ++n) {
          bool any = false;
          for (int k = 0; k < tr.Nx + 2 * r; ++k) {
            line[k] = a.fetch(p, n, k - r);
            any = any || line[k] != cplx{0.0, 0.0};
          }
          if (!any) continue;
          auto dst = out.component(p, n);
          // w is antisymmetric about s = r; pairing makes constants map to exactly 0
          for (int i = 0; i < tr.Nx; ++i) {
            cplx acc{0.0, 0.0};
            for (int k = 1; k <= r; ++k) acc += w[r + k] * (line[i + r + k] - line[i + r - k]);
            dst[i] = scale * acc;
          }
        }
      break;
    }
    case 2:
      for (int p = -tr.P; p <= tr.P; ++p)
        for (int n = -tr.N; n <= tr.N; ++n) {
          auto src = a.component(p, n);
          auto dst = out.component(p, n);
          for (int i = 0; i < tr.Nx; ++i)
            dst[i] = d2_factor(prm.c, p, n, static_cast<double>(i) / tr.Nx) * src[i];
        }
      break;
    default:
      for (int p = -tr.P; p <= tr.P; ++p) {
        const cplx f = d3_factor(prm.c, prm.alpha, p);
        for (int n = -tr.N; n <= tr.N; ++n) {
          auto src = a.component(p, n);
          auto dst = out.component(p, n);
          for (int i = 0; i < tr.Nx; ++i) dst[i] = f * src[i];
        }
      }
  }
  return out;
}

AlgebraElement delta(DerivationId j, const AlgebraElement& a) {
  AlgebraElement out = derive(j, a);
  for (auto& v : out.coefficients()) v = cplx{-v.imag(), v.real()};
  return out;
}

void derive_transpose_add(DerivationId j, const AlgebraElement& g, AlgebraElement& out) {
  if (!g.same_space(out)) throw ConfigError("derive_transpose_add: space mismatch");
  const auto& tr = g.trunc();
  const auto& prm = g.params();
  switch (j.value()) {
    case 1: {
      const auto w = central_derivative_weights(tr.interp_order);
      const int r = tr.interp_order / 2;
      const double scale = -static_cast<double>(tr.Nx);
      std::vector<cplx> line(tr.Nx + 2 * r);
      for (int p = -tr.P; p <= tr.P; ++p)
        for (int n = -tr.N; n <= tr.N; ++n) {
          if (!g.component_nonzero(p, n)) continue;
          std::fill(line.begin(), line.end(), cplx{0.0, 0.0});
          auto src = g.component(p, n);
          for (int i = 0; i < tr.Nx; ++i)
            for (int k = 1; k <= r; ++k) {
              const cplx v = scale * w[r + k] * src[i];
              line[i + r + k] += v;
              line[i + r - k] -= v;
            }
          // scatter node k - r back through the twist
          for (int k = 0; k < tr.Nx + 2 * r; ++k) {
            const long jn = k - r;
            const long kk = jn < 0 ? -1 : (jn >= tr.Nx ? 1 : 0);
            const long shifted = n - kk * prm.c * p;
            if (shifted < -tr.N || shifted > tr.N) continue;
            out.at(p, static_cast<int>(shifted), static_cast<int>(jn - kk * tr.Nx)) += line[k];
          }
        }
      break;
    }
    case 2:
      for (int p = -tr.P; p <= tr.P; ++p)
        for (int n = -tr.N; n <= tr.N; ++n) {
          auto src = g.component(p, n);
          auto dst = out.component(p, n);
          for (int i = 0; i < tr.Nx; ++i)
            dst[i] += std::conj(d2_factor(prm.c, p, n, static_cast<double>(i) / tr.Nx)) * src[i];
        }
      break;
    default:
      for (int p = -tr.P; p <= tr.P; ++p) {
        const cplx f = std::conj(d3_factor(prm.c, prm.alpha, p));
        for (int n = -tr.N; n <= tr.N; ++n) {
          auto src = g.component(p, n);
          auto dst = out.component(p, n);
          for (int i = 0; i < tr.Nx; ++i) dst[i] += f * src[i];
        }
      }
  }
}

}  // namespace qhm
