#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhm/connections.hpp"

namespace qhm {

/// Real coordinates on band-limited skew triples (A_1, A_2, A_3).
///
/// For each slot l and matrix position j <= k the chart keeps every node of
/// the components with |p| <= P0, |n| <= N0. Diagonal entries store the
/// canonical half (p, n) > (-p, -n) as real and imaginary parts plus the
/// purely imaginary (0, 0) component; the partner is -conj. Off-diagonal
/// entries store A_jk fully and A_kj(p, n) = -conj(A_jk(-p, -n)).
class ParamChart {
 public:
  ParamChart(const ModuleSpec& spec, const AlgebraParams& params, const Truncation& trunc,
             int P0 = 1, int N0 = 4);

  std::size_t dim() const { return dim_; }
  const ModuleSpec& spec() const { return spec_; }
  const AlgebraParams& params() const { return params_; }
  const Truncation& trunc() const { return trunc_; }
  int P0() const { return P0_; }
  int N0() const { return N0_; }

  std::vector<double> pack(const Connection& conn) const;
  Connection unpack(const std::vector<double>& v) const;
  /// Chart gradient from Re-pairing gradients of the three matrices.
  std::vector<double> pull_back(const std::array<AlgebraMatrix, 3>& grad) const;

 private:
  struct Entry {
    int slot, j, k, p, n;
    bool imag_only;
    std::size_t offset;
  };
  ModuleSpec spec_;
  AlgebraParams params_;
  Truncation trunc_;
  int P0_, N0_;
  std::vector<Entry> entries_;
  std::size_t dim_ = 0;
};

struct ValueGrad {
  double value = 0.0;
  std::vector<double> grad;
};

/// ym_cr at unpack(v) and its gradient, by reverse accumulation through the
/// curvature.
ValueGrad ym_value_grad(const std::vector<double>& v, const ParamChart& chart);

/// d/de ym_cr(unpack(v + e h)) at e = 0 from the linearized curvature.
double ym_directional(const std::vector<double>& v, const std::vector<double>& h,
                      const ParamChart& chart);

enum class DescentMethod { gradient, lbfgs };

struct OptimOptions {
  int max_iters = 2000;
  double grad_tol = 1e-4;
  double initial_step = 1e-3;
  double beta = 0.5;
  double sigma = 1e-4;
  /// gradient: steepest descent with a Barzilai-Borwein trial step.
  /// lbfgs: limited-memory quasi-Newton direction. Both use the same
  /// monotone Armijo backtracking.
  DescentMethod method = DescentMethod::lbfgs;
  int memory = 10;

  void validate() const;
};

std::string to_string(DescentMethod m);
DescentMethod parse_descent_method(const std::string& s);

struct OptimReport {
  int iters = 0;
  std::vector<double> values;
  std::vector<double> grad_norms;
  std::string termination;
  std::size_t chart_dim = 0;
  std::uint64_t seed = 0;
  bool monotone = true;
};

struct MinimizeResult {
  Connection connection;
  OptimReport report;
};

/// Gradient descent with Armijo backtracking. Terminates on grad_tol,
/// max_iters or step underflow; throws NumericalError on non-finite values.
MinimizeResult minimize(const Connection& start, const ParamChart& chart,
                        const OptimOptions& options, std::uint64_t seed = 0);

}  // namespace qhm
