#include "qhm/ym_opt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "qhm/star.hpp"

namespace qhm {
namespace {

bool canonical(int p, int n) { return p > 0 || (p == 0 && n > 0); }

void matmul_vjp(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& g,
                AlgebraMatrix& ga, AlgebraMatrix& gb) {
  const int q = a.size();
  for (int j = 0; j < q; ++j)
    for (int k = 0; k < q; ++k) {
      if (std::all_of(g(j, k).coefficients().begin(), g(j, k).coefficients().end(),
                      [](cplx z) { return z == cplx{0.0, 0.0}; }))
        continue;
      for (int m = 0; m < q; ++m) star_vjp(a(j, m), b(m, k), g(j, k), ga(j, m), gb(m, k));
    }
}

void derive_transpose_add(DerivationId j, const AlgebraMatrix& g, AlgebraMatrix& out,
                          double sign) {
  for (std::size_t e = 0; e < g.entries().size(); ++e)
    derive_transpose_add(j, cplx{sign, 0.0} * g.entries()[e], out.entries()[e]);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

ParamChart::ParamChart(const ModuleSpec& spec, const AlgebraParams& params,
                       const Truncation& trunc, int P0, int N0)
    : spec_(spec), params_(params), trunc_(trunc), P0_(P0), N0_(N0) {
  if (spec.q < 1) throw ConfigError("module rank q must be >= 1");
  if (P0 < 0 || N0 < 0 || P0 > trunc.P || N0 > trunc.N)
    throw ConfigError("chart band exceeds the truncation");
  const std::size_t nx = static_cast<std::size_t>(trunc.Nx);
  for (int slot = 0; slot < 3; ++slot)
    for (int j = 0; j < spec.q; ++j)
      for (int k = j; k < spec.q; ++k)
        for (int p = -P0; p <= P0; ++p)
          for (int n = -N0; n <= N0; ++n) {
            if (j == k && !(canonical(p, n) || (p == 0 && n == 0))) continue;
            const bool imag_only = j == k && p == 0 && n == 0;
            entries_.push_back({slot, j, k, p, n, imag_only, dim_});
            dim_ += imag_only ? nx : 2 * nx;
          }
}

std::vector<double> ParamChart::pack(const Connection& conn) const {
  if (conn.spec.q != spec_.q) throw ConfigError("pack: module rank differs from the chart");
  std::vector<double> v(dim_);
  const int nx = trunc_.Nx;
  for (const auto& e : entries_) {
    const auto& a = conn.A[e.slot](e.j, e.k);
    for (int i = 0; i < nx; ++i) {
      const cplx z = a.at(e.p, e.n, i);
      if (e.imag_only) {
        v[e.offset + i] = z.imag();
      } else {
        v[e.offset + i] = z.real();
        v[e.offset + nx + i] = z.imag();
      }
    }
  }
  return v;
}

Connection ParamChart::unpack(const std::vector<double>& v) const {
  if (v.size() != dim_) throw ConfigError("unpack: vector dimension differs from the chart");
  std::array<AlgebraMatrix, 3> A;
  for (auto& m : A) m = AlgebraMatrix(spec_.q, params_, trunc_);
  const int nx = trunc_.Nx;
  for (const auto& e : entries_) {
    auto& a = A[e.slot](e.j, e.k);
    auto& partner = A[e.slot](e.k, e.j);
    for (int i = 0; i < nx; ++i) {
      if (e.imag_only) {
        a.at(0, 0, i) = cplx{0.0, v[e.offset + i]};
        continue;
      }
      const cplx z{v[e.offset + i], v[e.offset + nx + i]};
      a.at(e.p, e.n, i) = z;
      partner.at(-e.p, -e.n, i) = -std::conj(z);
    }
  }
  Connection conn{spec_, std::move(A)};
  return conn;
}

std::vector<double> ParamChart::pull_back(const std::array<AlgebraMatrix, 3>& grad) const {
  std::vector<double> g(dim_);
  const int nx = trunc_.Nx;
  for (const auto& e : entries_) {
    const auto& ga = grad[e.slot](e.j, e.k);
    const auto& gp = grad[e.slot](e.k, e.j);
    for (int i = 0; i < nx; ++i) {
      if (e.imag_only) {
        g[e.offset + i] = ga.at(0, 0, i).imag();
        continue;
      }
      const cplx x = ga.at(e.p, e.n, i);
      const cplx y = gp.at(-e.p, -e.n, i);
      g[e.offset + i] = x.real() - y.real();
      g[e.offset + nx + i] = x.imag() + y.imag();
    }
  }
  return g;
}

ValueGrad ym_value_grad(const std::vector<double>& v, const ParamChart& chart) {
  const Connection conn = chart.unpack(v);
  const auto f = cr_curvature(conn);
  ValueGrad out;
  out.value = ym_from_curvature(f).value;

  const auto& prm = chart.params();
  const auto& tr = chart.trunc();
  const int q = chart.spec().q;
  // d(-Re tau(X)) pairs with the constant -1/Nx on the (0,0) component
  AlgebraElement gtrace(prm, tr);
  for (int i = 0; i < tr.Nx; ++i) gtrace.at(0, 0, i) = cplx{-1.0 / tr.Nx, 0.0};

  std::array<const AlgebraMatrix*, 3> F{&f.F13, &f.F23, &f.F12};
  std::array<AlgebraMatrix, 3> gF;
  for (int s = 0; s < 3; ++s) {
    gF[s] = AlgebraMatrix(q, prm, tr);
    for (int m = 0; m < q; ++m)
      for (int k = 0; k < q; ++k)
        star_vjp((*F[s])(m, k), (*F[s])(k, m), gtrace, gF[s](m, k), gF[s](k, m));
  }

  const auto& A1 = conn.A[0];
  const auto& A2 = conn.A[1];
  const auto& A3 = conn.A[2];
  std::array<AlgebraMatrix, 3> gA;
  for (auto& m : gA) m = AlgebraMatrix(q, prm, tr);
  const DerivationId D1(1), D2(2), D3(3);

  // F13 = d1 A3 - d3 A1 + A1 A3 - A3 A1
  derive_transpose_add(D1, gF[0], gA[2], 1.0);
  derive_transpose_add(D3, gF[0], gA[0], -1.0);
  matmul_vjp(A1, A3, gF[0], gA[0], gA[2]);
  matmul_vjp(A3, A1, cplx{-1.0, 0.0} * gF[0], gA[2], gA[0]);
  // F23 = d2 A3 - d3 A2 + A2 A3 - A3 A2
  derive_transpose_add(D2, gF[1], gA[2], 1.0);
  derive_transpose_add(D3, gF[1], gA[1], -1.0);
  matmul_vjp(A2, A3, gF[1], gA[1], gA[2]);
  matmul_vjp(A3, A2, cplx{-1.0, 0.0} * gF[1], gA[2], gA[1]);
  // F12 = d1 A2 - d2 A1 + A1 A2 - A2 A1 + A3 / alpha
  derive_transpose_add(D1, gF[2], gA[1], 1.0);
  derive_transpose_add(D2, gF[2], gA[0], -1.0);
  matmul_vjp(A1, A2, gF[2], gA[0], gA[1]);
  matmul_vjp(A2, A1, cplx{-1.0, 0.0} * gF[2], gA[1], gA[0]);
  gA[2] = gA[2] + cplx{1.0 / prm.alpha, 0.0} * gF[2];

  out.grad = chart.pull_back(gA);
  return out;
}

double ym_directional(const std::vector<double>& v, const std::vector<double>& h,
                      const ParamChart& chart) {
  const Connection conn = chart.unpack(v);
  const Connection dir = chart.unpack(h);
  const auto f = cr_curvature(conn);
  const DerivationId D1(1), D2(2), D3(3);
  const auto& A = conn.A;
  const auto& H = dir.A;
  const double alpha = chart.params().alpha;
  const AlgebraMatrix dF13 = derive(D1, H[2]) - derive(D3, H[0]) + commutator(H[0], A[2]) +
                             commutator(A[0], H[2]);
  const AlgebraMatrix dF23 = derive(D2, H[2]) - derive(D3, H[1]) + commutator(H[1], A[2]) +
                             commutator(A[1], H[2]);
  const AlgebraMatrix dF12 = derive(D1, H[1]) - derive(D2, H[0]) + commutator(H[0], A[1]) +
                             commutator(A[0], H[1]) + cplx{1.0 / alpha, 0.0} * H[2];
  cplx acc{0.0, 0.0};
  acc -= matrix_trace_of_product(f.F13, dF13) + matrix_trace_of_product(dF13, f.F13);
  acc -= matrix_trace_of_product(f.F23, dF23) + matrix_trace_of_product(dF23, f.F23);
  acc -= matrix_trace_of_product(f.F12, dF12) + matrix_trace_of_product(dF12, f.F12);
  return acc.real();
}

void OptimOptions::validate() const {
  if (max_iters < 0) throw ConfigError("max_iters must be >= 0");
  if (!(grad_tol >= 0.0)) throw ConfigError("grad_tol must be >= 0");
  if (!(initial_step > 0.0)) throw ConfigError("initial_step must be > 0");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0,1)");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("sigma must lie in (0,1)");
  if (memory < 1) throw ConfigError("memory must be >= 1");
}

std::string to_string(DescentMethod m) {
  return m == DescentMethod::gradient ? "gradient" : "lbfgs";
}

DescentMethod parse_descent_method(const std::string& s) {
  if (s == "gradient") return DescentMethod::gradient;
  if (s == "lbfgs") return DescentMethod::lbfgs;
  throw ConfigError("unknown descent method '" + s + "'");
}

namespace {

struct History {
  std::deque<std::vector<double>> s, y;
  std::deque<double> rho;
};

/// Two-loop recursion: returns -H g.
std::vector<double> lbfgs_direction(const History& h, const std::vector<double>& g) {
  std::vector<double> d = g;
  const std::size_t m = h.s.size();
  std::vector<double> a(m);
  for (std::size_t k = m; k-- > 0;) {
    a[k] = h.rho[k] * dot(h.s[k], d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= a[k] * h.y[k][i];
  }
  const double gamma = dot(h.s.back(), h.y.back()) / dot(h.y.back(), h.y.back());
  for (auto& v : d) v *= gamma;
  for (std::size_t k = 0; k < m; ++k) {
    const double b = h.rho[k] * dot(h.y[k], d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += (a[k] - b) * h.s[k][i];
  }
  for (auto& v : d) v = -v;
  return d;
}

}  // namespace

MinimizeResult minimize(const Connection& start, const ParamChart& chart,
                        const OptimOptions& options, std::uint64_t seed) {
  options.validate();
  OptimReport rep;
  rep.chart_dim = chart.dim();
  rep.seed = seed;

  std::vector<double> x = chart.pack(start);
  ValueGrad cur = ym_value_grad(x, chart);
  auto check_finite = [](double v) {
    if (!std::isfinite(v)) throw NumericalError("minimize: non-finite objective value");
  };
  check_finite(cur.value);
  double gnorm = std::sqrt(dot(cur.grad, cur.grad));
  rep.values.push_back(cur.value);
  rep.grad_norms.push_back(gnorm);

  History hist;
  double bb = options.initial_step;
  std::vector<double> x_new(x.size());
  rep.termination = "max_iters";
  for (int it = 0; it < options.max_iters; ++it) {
    if (gnorm <= options.grad_tol) {
      rep.termination = "grad_tol";
      break;
    }
    std::vector<double> d;
    double t = 1.0;
    if (options.method == DescentMethod::lbfgs && !hist.s.empty()) {
      d = lbfgs_direction(hist, cur.grad);
    }
    double slope = d.empty() ? 0.0 : dot(d, cur.grad);
    if (d.empty() || !(slope < 0.0)) {
      d = cur.grad;
      for (auto& v : d) v = -v;
      slope = -gnorm * gnorm;
      t = options.method == DescentMethod::lbfgs && hist.s.empty() ? options.initial_step : bb;
    }

    double accepted = -1.0;
    ValueGrad next;
    while (t >= 1e-20) {
      for (std::size_t k = 0; k < x.size(); ++k) x_new[k] = x[k] + t * d[k];
      next = ym_value_grad(x_new, chart);
      check_finite(next.value);
      if (next.value <= cur.value + options.sigma * t * slope) {
        accepted = t;
        break;
      }
      t *= options.beta;
    }
    if (accepted < 0.0) {
      rep.termination = "step_underflow";
      break;
    }

    std::vector<double> s(x.size()), y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      s[k] = x_new[k] - x[k];
      y[k] = next.grad[k] - cur.grad[k];
    }
    const double sy = dot(s, y);
    if (options.method == DescentMethod::gradient) {
      bb = sy > 0.0 ? dot(s, s) / sy : options.initial_step;
    } else if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      hist.s.push_back(std::move(s));
      hist.y.push_back(std::move(y));
      hist.rho.push_back(1.0 / sy);
      if (static_cast<int>(hist.s.size()) > options.memory) {
        hist.s.pop_front();
        hist.y.pop_front();
        hist.rho.pop_front();
      }
    }
    if (next.value > cur.value) rep.monotone = false;
    x.swap(x_new);
    cur = std::move(next);
    gnorm = std::sqrt(dot(cur.grad, cur.grad));
    rep.values.push_back(cur.value);
    rep.grad_norms.push_back(gnorm);
    rep.iters = it + 1;
  }
  if (rep.termination == "max_iters" && gnorm <= options.grad_tol) rep.termination = "grad_tol";
  return {chart.unpack(x), std::move(rep)};
}

}  // namespace qhm
