#include "qhm/star.hpp"

#include <algorithm>
#include <cmath>

namespace qhm {
namespace {

void check_operands(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.params() == b.params())) throw ConfigError("star: params mismatch");
  if (a.trunc().Nx != b.trunc().Nx || a.trunc().interp_order != b.trunc().interp_order)
    throw ConfigError("star: x-grids differ");
}

bool all_zero(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(),
                     [](cplx z) { return z.real() == 0.0 && z.imag() == 0.0; });
}

bool sector_nonzero(const AlgebraElement& a, int p) {
  const auto& tr = a.trunc();
  for (int n = -tr.N; n <= tr.N; ++n)
    if (a.component_nonzero(p, n)) return true;
  return false;
}

// Shifted samples of every component n in [-N, N] of momentum sector p.
// Entries that vanish identically are flagged so the product loops skip them.
struct SectorSamples {
  int N = 0;
  int nx = 0;
  std::vector<cplx> values;
  std::vector<char> live;

  std::span<cplx> row(int n) {
    return {values.data() + static_cast<std::size_t>(n + N) * nx, static_cast<std::size_t>(nx)};
  }
  bool is_live(int n) const { return live[n + N] != 0; }
};

SectorSamples sample_sector(const AlgebraElement& a, int p, double shift) {
  const auto& tr = a.trunc();
  SectorSamples s{tr.N, tr.Nx, std::vector<cplx>(static_cast<std::size_t>(tr.n_count()) * tr.Nx),
                  std::vector<char>(tr.n_count(), 0)};
  for (int n = -tr.N; n <= tr.N; ++n) {
    auto row = s.row(n);
    sample_shifted(a, p, n, shift, row);
    s.live[n + tr.N] = all_zero(row) ? 0 : 1;
  }
  return s;
}

double phase_argument(const AlgebraParams& prm, int n1, int n2, int q, int p) {
  return -static_cast<double>(n1 * (q - p) + n2 * q) * prm.hbar * prm.nu;
}

}  // namespace

StarResult star_checked(const AlgebraElement& a, const AlgebraElement& b,
                        std::optional<Truncation> out_trunc) {
  check_operands(a, b);
  const Truncation out_tr = out_trunc.value_or(a.trunc());
  out_tr.validate();
  if (out_tr.Nx != a.trunc().Nx || out_tr.interp_order != a.trunc().interp_order)
    throw ConfigError("star: output grid must match the operands");

  const AlgebraParams& prm = a.params();
  const int Pa = a.trunc().P, Pb = b.trunc().P;
  const int Na = a.trunc().N, Nb = b.trunc().N;
  const int Pe = Pa + Pb, Ne = Na + Nb;
  const int nx = out_tr.Nx;

  std::vector<char> a_live(2 * Pa + 1), b_live(2 * Pb + 1);
  for (int q = -Pa; q <= Pa; ++q) a_live[q + Pa] = sector_nonzero(a, q);
  for (int r = -Pb; r <= Pb; ++r) b_live[r + Pb] = sector_nonzero(b, r);

  StarResult result{AlgebraElement(prm, out_tr), 0.0};
  std::vector<cplx> acc(static_cast<std::size_t>(2 * Ne + 1) * nx);
  double dropped = 0.0;

  for (int p = -Pe; p <= Pe; ++p) {
    std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
    bool touched = false;
    const int qlo = std::max(-Pa, p - Pb);
    const int qhi = std::min(Pa, p + Pb);
    for (int q = qlo; q <= qhi; ++q) {
      if (!a_live[q + Pa] || !b_live[p - q + Pb]) continue;
      auto sa = sample_sector(a, q, prm.hbar * (q - p) * prm.mu);
      auto sb = sample_sector(b, p - q, prm.hbar * q * prm.mu);
      for (int n1 = -Na; n1 <= Na; ++n1) {
        if (!sa.is_live(n1)) continue;
        auto ra = sa.row(n1);
        for (int n2 = -Nb; n2 <= Nb; ++n2) {
          if (!sb.is_live(n2)) continue;
          auto rb = sb.row(n2);
          const cplx phase = unit_phase(phase_argument(prm, n1, n2, q, p));
          cplx* dst = acc.data() + static_cast<std::size_t>(n1 + n2 + Ne) * nx;
          for (int i = 0; i < nx; ++i) dst[i] += phase * ra[i] * rb[i];
          touched = true;
        }
      }
    }
    if (!touched) continue;
    for (int n = -Ne; n <= Ne; ++n) {
      const cplx* src = acc.data() + static_cast<std::size_t>(n + Ne) * nx;
      if (result.product.in_band(p, n)) {
        std::copy(src, src + nx, result.product.component(p, n).begin());
      } else {
        for (int i = 0; i < nx; ++i) dropped += std::norm(src[i]);
      }
    }
  }
  result.truncation_mass = std::sqrt(dropped / nx);
  return result;
}

AlgebraElement star(const AlgebraElement& a, const AlgebraElement& b,
                    std::optional<Truncation> out_trunc) {
  return star_checked(a, b, out_trunc).product;
}

void star_vjp(const AlgebraElement& a, const AlgebraElement& b,
              const AlgebraElement& grad_out, AlgebraElement& grad_a,
              AlgebraElement& grad_b) {
  check_operands(a, b);
  if (!grad_a.same_space(a) || !grad_b.same_space(b))
    throw ConfigError("star_vjp: gradient buffers must match the operands");
  const AlgebraParams& prm = a.params();
  const Truncation& gt = grad_out.trunc();
  const int Pa = a.trunc().P, Pb = b.trunc().P;
  const int Na = a.trunc().N, Nb = b.trunc().N;
  const int nx = gt.Nx;
  const int Pout = std::min(gt.P, Pa + Pb);

  for (int p = -Pout; p <= Pout; ++p) {
    std::vector<int> live_n;
    for (int n = -gt.N; n <= gt.N; ++n)
      if (grad_out.component_nonzero(p, n)) live_n.push_back(n);
    if (live_n.empty()) continue;

    const int qlo = std::max(-Pa, p - Pb);
    const int qhi = std::min(Pa, p + Pb);
    for (int q = qlo; q <= qhi; ++q) {
      const double shift_a = prm.hbar * (q - p) * prm.mu;
      const double shift_b = prm.hbar * q * prm.mu;
      auto sa = sample_sector(a, q, shift_a);
      auto sb = sample_sector(b, p - q, shift_b);
      std::vector<cplx> ga(static_cast<std::size_t>(2 * Na + 1) * nx, cplx{0.0, 0.0});
      std::vector<cplx> gb(static_cast<std::size_t>(2 * Nb + 1) * nx, cplx{0.0, 0.0});
      std::vector<char> ga_used(2 * Na + 1, 0), gb_used(2 * Nb + 1, 0);

      for (int n : live_n) {
        auto g = grad_out.component(p, n);
        const int n1lo = std::max(-Na, n - Nb);
        const int n1hi = std::min(Na, n + Nb);
        for (int n1 = n1lo; n1 <= n1hi; ++n1) {
          const int n2 = n - n1;
          const bool la = sa.is_live(n1), lb = sb.is_live(n2);
          if (!la && !lb) continue;
          const cplx phase = unit_phase(phase_argument(prm, n1, n2, q, p));
          auto ra = sa.row(n1);
          auto rb = sb.row(n2);
          if (lb) {
            cplx* dst = ga.data() + static_cast<std::size_t>(n1 + Na) * nx;
            for (int i = 0; i < nx; ++i) dst[i] += std::conj(phase * rb[i]) * g[i];
            ga_used[n1 + Na] = 1;
          }
          if (la) {
            cplx* dst = gb.data() + static_cast<std::size_t>(n2 + Nb) * nx;
            for (int i = 0; i < nx; ++i) dst[i] += std::conj(phase * ra[i]) * g[i];
            gb_used[n2 + Nb] = 1;
          }
        }
      }
      for (int n1 = -Na; n1 <= Na; ++n1) {
        if (!ga_used[n1 + Na]) continue;
        sample_shifted_transpose(
            grad_a, q, n1, shift_a,
            std::span<const cplx>(ga.data() + static_cast<std::size_t>(n1 + Na) * nx, nx));
      }
      for (int n2 = -Nb; n2 <= Nb; ++n2) {
        if (!gb_used[n2 + Nb]) continue;
        sample_shifted_transpose(
            grad_b, p - q, n2, shift_b,
            std::span<const cplx>(gb.data() + static_cast<std::size_t>(n2 + Nb) * nx, nx));
      }
    }
  }
}

cplx trace_of_product(const AlgebraElement& a, const AlgebraElement& b) {
  check_operands(a, b);
  const AlgebraParams& prm = a.params();
  const int Pa = a.trunc().P, Pb = b.trunc().P;
  const int Na = a.trunc().N, Nb = b.trunc().N;
  const int nx = a.trunc().Nx;
  std::vector<cplx> acc(nx, cplx{0.0, 0.0});
  const int qlo = std::max(-Pa, -Pb);
  const int qhi = std::min(Pa, Pb);
  for (int q = qlo; q <= qhi; ++q) {
    if (!sector_nonzero(a, q) || !sector_nonzero(b, -q)) continue;
    const double shift = prm.hbar * q * prm.mu;
    auto sa = sample_sector(a, q, shift);
    auto sb = sample_sector(b, -q, shift);
    for (int n1 = -Na; n1 <= Na; ++n1) {
      const int n2 = -n1;
      if (n2 < -Nb || n2 > Nb) continue;
      if (!sa.is_live(n1) || !sb.is_live(n2)) continue;
      const cplx phase = unit_phase(phase_argument(prm, n1, n2, q, 0));
      auto ra = sa.row(n1);
      auto rb = sb.row(n2);
      for (int i = 0; i < nx; ++i) acc[i] += phase * ra[i] * rb[i];
    }
  }
  cplx total{0.0, 0.0};
  for (cplx v : acc) total += v;
  return total / static_cast<double>(nx);
}

}  // namespace qhm
