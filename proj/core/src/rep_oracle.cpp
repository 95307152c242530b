#include "qhm/rep_oracle.hpp"

#include <cmath>
#include <cstring>

#include "qhm/star.hpp"

namespace qhm {
namespace {

void require_margin(const RepGrid& grid, double margin, const std::vector<RepVector>& vs) {
  if (!(grid.X > margin)) throw ConfigError("rep grid window too small for the momentum shifts");
  const int bs = grid.block_size();
  for (const auto& v : vs) {
    if (static_cast<std::size_t>(v.size()) != grid.dim())
      throw ConfigError("trial vector has the wrong dimension");
    for (int i = 0; i < grid.Mx; ++i) {
      if (std::abs(grid.x(i)) <= grid.X - margin) continue;
      if (v.segment(static_cast<Eigen::Index>(i) * bs, bs).squaredNorm() != 0.0)
        throw ConfigError("trial vector support violates the x-window margin");
    }
  }
}

}  // namespace

void RepGrid::validate() const {
  if (!(X > 0.0) || Mx < 1 || Ny < 1 || Pv < 1)
    throw ConfigError("rep grid requires X > 0 and Mx, Ny, Pv >= 1");
}

RepVector RepOperator::apply(const RepVector& v) const {
  const int bs = grid.block_size();
  RepVector out(v.size());
  for (int i = 0; i < grid.Mx; ++i)
    out.segment(static_cast<Eigen::Index>(i) * bs, bs).noalias() =
        blocks[i] * v.segment(static_cast<Eigen::Index>(i) * bs, bs);
  return out;
}

RepVector RepOperator::apply_adjoint(const RepVector& v) const {
  const int bs = grid.block_size();
  RepVector out(v.size());
  for (int i = 0; i < grid.Mx; ++i)
    out.segment(static_cast<Eigen::Index>(i) * bs, bs).noalias() =
        blocks[i].adjoint() * v.segment(static_cast<Eigen::Index>(i) * bs, bs);
  return out;
}

std::uint64_t element_hash(const AlgebraElement& a) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < len; ++k) {
      h ^= bytes[k];
      h *= 1099511628211ull;
    }
  };
  const auto& prm = a.params();
  const auto& tr = a.trunc();
  mix(&prm.c, sizeof prm.c);
  for (double d : {prm.hbar, prm.mu, prm.nu, prm.alpha}) mix(&d, sizeof d);
  for (int k : {tr.P, tr.N, tr.Nx, tr.interp_order}) mix(&k, sizeof k);
  const auto coeffs = a.coefficients();
  mix(coeffs.data(), coeffs.size_bytes());
  return h;
}

double oracle_margin(const AlgebraParams& params, const Truncation& trunc) {
  return 1.0 + params.hbar * 2.0 * trunc.P * std::abs(params.mu);
}

RepOperator build_rep(const AlgebraElement& a, const RepGrid& grid) {
  grid.validate();
  const auto& prm = a.params();
  const auto& tr = a.trunc();
  if (!(grid.X >= oracle_margin(prm, tr)))
    throw ConfigError("rep grid window too small for the momentum shifts");
  const int bs = grid.block_size();
  RepOperator op{grid, {}, element_hash(a)};
  op.blocks.assign(grid.Mx, Eigen::MatrixXcd::Zero(bs, bs));
  for (int i = 0; i < grid.Mx; ++i) {
    auto& B = op.blocks[i];
    const double x = grid.x(i);
    for (int p = -grid.Pv; p <= grid.Pv; ++p)
      for (int q = -tr.P; q <= tr.P; ++q) {
        const int src_p = p - q;
        if (src_p < -grid.Pv || src_p > grid.Pv) continue;
        const double s = prm.hbar * (q - 2 * p);
        for (int n1 = -tr.N; n1 <= tr.N; ++n1) {
          // x may leave [0,1); eval_component follows the twist
          const cplx v = eval_component(a, q, n1, x - s * prm.mu);
          if (v == cplx{0.0, 0.0}) continue;
          const cplx w = v * unit_phase(-n1 * s * prm.nu);
          for (int n = -grid.Ny; n <= grid.Ny; ++n) {
            const int n2 = n - n1;
            if (n2 < -grid.Ny || n2 > grid.Ny) continue;
            B(grid.local(n, p), grid.local(n2, src_p)) += w;
          }
        }
      }
  }
  return op;
}

RepVector random_trial_vector(const RepGrid& grid, double margin, int p_support,
                              int n_support, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  RepVector v = RepVector::Zero(static_cast<Eigen::Index>(grid.dim()));
  const int bs = grid.block_size();
  for (int i = 0; i < grid.Mx; ++i) {
    if (std::abs(grid.x(i)) > grid.X - margin) continue;
    for (int p = -p_support; p <= p_support; ++p)
      for (int n = -n_support; n <= n_support; ++n) {
        const double re = nd(rng);
        const double im = nd(rng);
        v(static_cast<Eigen::Index>(i) * bs + grid.local(n, p)) = cplx{re, im};
      }
  }
  return v;
}

OracleResult oracle_check_product(const AlgebraElement& a, const AlgebraElement& b,
                                  const RepGrid& grid,
                                  const std::vector<RepVector>& trial_vectors) {
  if (!a.same_space(b)) throw ConfigError("oracle_check_product: space mismatch");
  require_margin(grid, oracle_margin(a.params(), a.trunc()), trial_vectors);
  const auto prod = star_checked(a, b);
  const auto pa = build_rep(a, grid);
  const auto pb = build_rep(b, grid);
  const auto pab = build_rep(prod.product, grid);
  OracleResult r;
  r.truncation_mass = prod.truncation_mass;
  for (const auto& v : trial_vectors) {
    const double nv = v.norm();
    if (nv == 0.0) continue;
    const RepVector d = pab.apply(v) - pa.apply(pb.apply(v));
    r.residual = std::max(r.residual, d.norm() / nv);
  }
  const double scale = l2_norm(a) * l2_norm(b);
  r.relative = scale > 0.0 ? r.residual / scale : r.residual;
  return r;
}

double oracle_check_adjoint(const AlgebraElement& a, const RepGrid& grid,
                            const std::vector<RepVector>& trial_vectors) {
  require_margin(grid, oracle_margin(a.params(), a.trunc()), trial_vectors);
  const auto pa = build_rep(a, grid);
  const auto ps = build_rep(involution(a), grid);
  double worst = 0.0;
  for (const auto& v : trial_vectors) {
    const double nv = v.norm();
    if (nv == 0.0) continue;
    worst = std::max(worst, (ps.apply(v) - pa.apply_adjoint(v)).norm() / nv);
  }
  return worst;
}

}  // namespace qhm
