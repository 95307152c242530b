#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qhm/element.hpp"
#include "qhm/random.hpp"

namespace qhm {

/// Discretization of L^2(R x T x Z): x-samples -X + i (2X / Mx) for
/// i in [0, Mx), y-frequencies |n| <= Ny, momenta |p| <= Pv.
struct RepGrid {
  double X = 4.0;
  int Mx = 64;
  int Ny = 16;
  int Pv = 3;

  void validate() const;
  double x(int i) const { return -X + (2.0 * X / Mx) * i; }
  int block_size() const { return (2 * Ny + 1) * (2 * Pv + 1); }
  /// Index of (n, p) within a block.
  int local(int n, int p) const { return (p + Pv) * (2 * Ny + 1) + (n + Ny); }
  std::size_t dim() const { return static_cast<std::size_t>(Mx) * block_size(); }
};

using RepVector = Eigen::VectorXcd;

/// pi(Phi) restricted to the grid. The operator
///
///   (pi(Phi) xi)(x,y,p) = sum_q Phi(x - hbar (q - 2p) mu, y - hbar (q - 2p) nu, q) xi(x,y,p-q)
///
/// does not move x, so it is stored as one dense block per x-sample.
struct RepOperator {
  RepGrid grid;
  std::vector<Eigen::MatrixXcd> blocks;
  std::uint64_t source_hash = 0;

  RepVector apply(const RepVector& v) const;
  RepVector apply_adjoint(const RepVector& v) const;
};

/// FNV-1a over the parameters, truncation and coefficient bytes.
std::uint64_t element_hash(const AlgebraElement& a);

/// 1 + hbar 2P |mu| for the element's momentum window.
double oracle_margin(const AlgebraParams& params, const Truncation& trunc);

RepOperator build_rep(const AlgebraElement& a, const RepGrid& grid);

/// Random vector supported on |x| <= X - margin, |p| <= p_support,
/// |n| <= n_support.
RepVector random_trial_vector(const RepGrid& grid, double margin, int p_support,
                              int n_support, Rng& rng);

struct OracleResult {
  /// max_v |pi(Phi Psi) v - pi(Phi) pi(Psi) v| / |v|
  double residual = 0.0;
  /// residual / (l2_norm(Phi) l2_norm(Psi))
  double relative = 0.0;
  double truncation_mass = 0.0;
};

OracleResult oracle_check_product(const AlgebraElement& a, const AlgebraElement& b,
                                  const RepGrid& grid,
                                  const std::vector<RepVector>& trial_vectors);

/// max_v |pi(Phi*) v - pi(Phi)^* v| / |v|.
double oracle_check_adjoint(const AlgebraElement& a, const RepGrid& grid,
                            const std::vector<RepVector>& trial_vectors);

}  // namespace qhm
