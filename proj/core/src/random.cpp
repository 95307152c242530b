#include "qhm/random.hpp"

#include <cmath>

namespace qhm {
namespace {

cplx gaussian_complex(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0 / std::sqrt(2.0));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

void add_fourier_part(AlgebraElement& out, Rng& rng, const ProfileSpec& spec) {
  const auto& prm = out.params();
  const auto& tr = out.trunc();
  for (int m = -spec.M0; m <= spec.M0; ++m)
    for (int n = -spec.N0; n <= spec.N0; ++n) {
      const double amp = spec.amplitude * std::exp(-spec.decay * (std::abs(m) + std::abs(n)));
      out += (amp * gaussian_complex(rng)) * fourier_element(prm, tr, m, n);
    }
}

}  // namespace

AlgebraElement random_p0_element(const AlgebraParams& params, const Truncation& trunc,
                                 Rng& rng, const ProfileSpec& spec) {
  AlgebraElement out(params, trunc);
  add_fourier_part(out, rng, spec);
  return out;
}

AlgebraElement random_element(const AlgebraParams& params, const Truncation& trunc,
                              Rng& rng, const ProfileSpec& spec) {
  if (spec.P0 > trunc.P || spec.N0 > trunc.N)
    throw ConfigError("random_element: profile band exceeds the truncation");
  AlgebraElement out = random_p0_element(params, trunc, rng, spec);
  std::uniform_real_distribution<double> center(spec.center_min, spec.center_max);
  for (int p = -spec.P0; p <= spec.P0; ++p) {
    if (p == 0) continue;
    // k = +-1 translates stay inside |n| <= N0; |k| >= 2 ones add only ~1e-17
    const int hmax = spec.N0 - params.c * std::abs(p);
    if (hmax < 0) continue;
    for (int t = 0; t < spec.zak_terms; ++t) {
      ZakProfile prof;
      prof.p = p;
      prof.center = center(rng);
      prof.width = spec.width;
      for (int m = -hmax; m <= hmax; ++m)
        prof.h_coeffs[m] = spec.amplitude * std::exp(-spec.decay * std::abs(m)) *
                           gaussian_complex(rng);
      out += zak_element(params, trunc, prof);
    }
  }
  return out;
}

AlgebraElement random_element(const AlgebraParams& params, const Truncation& trunc,
                              std::uint64_t seed, const ProfileSpec& spec) {
  Rng rng(seed);
  return random_element(params, trunc, rng, spec);
}

AlgebraMatrix random_skew_matrix(const AlgebraParams& params, const Truncation& trunc,
                                 Rng& rng, int q, const ProfileSpec& spec) {
  AlgebraMatrix raw(q, params, trunc);
  for (auto& e : raw.entries()) e = random_element(params, trunc, rng, spec);
  AlgebraMatrix out(q, params, trunc);
  for (int j = 0; j < q; ++j)
    for (int k = 0; k < q; ++k) out(j, k) = 0.5 * (raw(j, k) - involution(raw(k, j)));
  return out;
}

AlgebraMatrix random_skew_matrix(const AlgebraParams& params, const Truncation& trunc,
                                 std::uint64_t seed, int q, const ProfileSpec& spec) {
  Rng rng(seed);
  return random_skew_matrix(params, trunc, rng, q, spec);
}

GroupElement random_group_element(Rng& rng, double range) {
  std::uniform_real_distribution<double> u(-range, range);
  const double r = u(rng);
  const double s = u(rng);
  const double t = u(rng);
  return {r, s, t};
}

}  // namespace qhm
