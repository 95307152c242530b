#include "qhm/connections.hpp"

#include <cmath>

#include "qhm/star.hpp"

namespace qhm {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_vector(const ModuleVector& xi, int q, const char* what) {
  if (static_cast<int>(xi.size()) != q) throw ConfigError(std::string(what) + ": length mismatch");
}

RealValue checked_real(cplx v, double scale, const char* what) {
  RealValue out{v.real(), v.imag(), scale};
  if (!(std::abs(v.imag()) <= kImagTolerance * scale))
    throw NumericalError(std::string(what) + ": imaginary part " + std::to_string(v.imag()) +
                         " exceeds tolerance");
  return out;
}

}  // namespace

AlgebraElement herm(const ModuleVector& xi, const ModuleVector& eta) {
  if (xi.size() != eta.size() || xi.empty()) throw ConfigError("herm: length mismatch");
  AlgebraElement out(xi.front().params(), xi.front().trunc());
  for (std::size_t j = 0; j < xi.size(); ++j) out += star(involution(xi[j]), eta[j]);
  return out;
}

Connection make_connection(const ModuleSpec& spec, const AlgebraMatrix& A1,
                           const AlgebraMatrix& A2, const AlgebraMatrix& A3) {
  if (spec.q < 1) throw ConfigError("module rank q must be >= 1");
  Connection conn{spec, {A1, A2, A3}};
  for (int l = 0; l < 3; ++l) {
    auto& a = conn.A[l];
    if (a.size() != spec.q) throw ConfigError("connection matrix size differs from q");
    if (!a.entries().front().same_space(conn.A[0].entries().front()))
      throw ConfigError("connection matrices live in different spaces");
    const double defect = skewness_defect(a);
    if (!(defect <= kSkewTolerance))
      throw ConfigError("connection matrix A" + std::to_string(l + 1) +
                        " is not skew (defect " + std::to_string(defect) + ")");
    a = 0.5 * (a - adjoint(a));
  }
  return conn;
}

Connection flat_connection(const ModuleSpec& spec, const AlgebraParams& params,
                           const Truncation& trunc) {
  AlgebraMatrix z(spec.q, params, trunc);
  return make_connection(spec, z, z, z);
}

ModuleVector right_multiply(const ModuleVector& xi, const AlgebraElement& a) {
  ModuleVector out;
  out.reserve(xi.size());
  for (const auto& x : xi) out.push_back(star(x, a));
  return out;
}

ModuleVector apply_matrix(const AlgebraMatrix& m, const ModuleVector& xi) {
  require_vector(xi, m.size(), "apply_matrix");
  ModuleVector out;
  for (int r = 0; r < m.size(); ++r) {
    AlgebraElement acc(m.params(), m.trunc());
    for (int k = 0; k < m.size(); ++k) acc += star(m(r, k), xi[k]);
    out.push_back(std::move(acc));
  }
  return out;
}

ModuleVector apply_connection(const Connection& conn, DerivationId j, const ModuleVector& xi) {
  require_vector(xi, conn.spec.q, "apply_connection");
  ModuleVector out = apply_matrix(conn.A[j.value() - 1], xi);
  for (int r = 0; r < conn.spec.q; ++r) out[r] += derive(j, xi[r]);
  return out;
}

ModuleVector apply_spectral(const Connection& conn, DerivationId j, const ModuleVector& xi) {
  ModuleVector out = apply_connection(conn, j, xi);
  for (auto& e : out) e = kI * e;
  return out;
}

CurvatureCR cr_curvature(const Connection& conn) {
  const DerivationId D1(1), D2(2), D3(3);
  const auto& A1 = conn.A[0];
  const auto& A2 = conn.A[1];
  const auto& A3 = conn.A[2];
  const double alpha = A1.params().alpha;
  CurvatureCR f;
  f.F13 = derive(D1, A3) - derive(D3, A1) + commutator(A1, A3);
  f.F23 = derive(D2, A3) - derive(D3, A2) + commutator(A2, A3);
  f.F12 = derive(D1, A2) - derive(D2, A1) + commutator(A1, A2) + cplx{1.0 / alpha, 0.0} * A3;
  return f;
}

RealValue ym_from_curvature(const CurvatureCR& f) {
  cplx acc{0.0, 0.0};
  double scale = 1.0;
  for (const auto* F : {&f.F13, &f.F23, &f.F12}) {
    acc -= matrix_trace_of_product(*F, *F);
    const double n = frobenius_norm(*F);
    scale += n * n;
  }
  return checked_real(acc, scale, "ym_cr");
}

RealValue ym_cr_checked(const Connection& conn) { return ym_from_curvature(cr_curvature(conn)); }

double ym_cr(const Connection& conn) { return ym_cr_checked(conn).value; }

FormMatrix to_spectral(const Connection& conn) {
  const int q = conn.spec.q;
  FormMatrix omega{q, {}};
  omega.entries.reserve(static_cast<std::size_t>(q) * q);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < q; ++j)
      omega.entries.push_back(
          OneForm{{kI * conn.A[0](k, j), kI * conn.A[1](k, j), kI * conn.A[2](k, j)}});
  return omega;
}

CurvatureSpectral spectral_theta(const FormMatrix& omega, const FormsConfig& cfg) {
  const int q = omega.q;
  CurvatureSpectral theta{q, {}};
  theta.entries.reserve(static_cast<std::size_t>(q) * q);
  for (int m = 0; m < q; ++m)
    for (int j = 0; j < q; ++j) {
      TwoForm t = d1form(omega(m, j), cfg);
      for (int k = 0; k < q; ++k) t = t + mul11(omega(m, k), omega(k, j));
      theta.entries.push_back(std::move(t));
    }
  return theta;
}

RealValue ym_spectral_checked(const CurvatureSpectral& theta, const FormsConfig& cfg) {
  cplx acc{0.0, 0.0};
  double scale = 1.0;
  for (const auto& t : theta.entries) {
    acc += two_form_inner(t, t, cfg);
    for (const auto& b : t.b) {
      const double n = l2_norm(b);
      scale += cfg.C_D * n * n;
    }
  }
  return checked_real(acc, scale, "ym_spectral");
}

double ym_spectral(const CurvatureSpectral& theta, const FormsConfig& cfg) {
  return ym_spectral_checked(theta, cfg).value;
}

YMReport equivalence_report(const Connection& conn, const FormsConfig& cfg) {
  cfg.validate();
  const auto v = ym_cr_checked(conn);
  const auto vt = ym_spectral_checked(spectral_theta(to_spectral(conn), cfg), cfg);
  YMReport r;
  r.ym_cr = v.value;
  r.ym_spectral = vt.value;
  r.ym_cr_imag = v.imag;
  r.ym_spectral_imag = vt.imag;
  r.c_d = cfg.C_D;
  r.predicted_ratio = cfg.C_D / 2.0;
  r.residual = std::abs(vt.value - r.predicted_ratio * v.value) / (1.0 + std::abs(v.value));
  r.q = conn.spec.q;
  r.trunc = conn.A[0].trunc();
  return r;
}

Connection gauge_transform(const Connection& conn, const AlgebraElement& u) {
  if (conn.spec.q != 1) throw ConfigError("gauge_transform supports q = 1 only");
  const AlgebraElement us = involution(u);
  const AlgebraElement one = identity(u.params(), u.trunc());
  if (l2_norm(star(us, u) - one) > kUnitaryTolerance ||
      l2_norm(star(u, us) - one) > kUnitaryTolerance)
    throw ConfigError("gauge_transform: u is not unitary");
  std::array<AlgebraMatrix, 3> out;
  for (int l = 0; l < 3; ++l) {
    const auto& a = conn.A[l](0, 0);
    out[l] = scalar_matrix(1, star(star(u, a), us) + star(u, derive(DerivationId(l + 1), us)));
  }
  return make_connection(conn.spec, out[0], out[1], out[2]);
}

}  // namespace qhm
