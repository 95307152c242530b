#include <doctest.h>

#include <cmath>

#include "qhm/connections.hpp"
#include "support.hpp"

using namespace qhm;
using namespace qhm::test;

namespace {

constexpr cplx kI{0.0, 1.0};

AlgebraElement zero() { return zero_element(params(), trunc()); }
AlgebraElement one() { return identity(params(), trunc()); }

Connection random_conn(int q, std::uint64_t seed) {
  Rng rng(seed);
  auto A1 = random_skew_matrix(params(), trunc(), rng, q);
  auto A2 = random_skew_matrix(params(), trunc(), rng, q);
  auto A3 = random_skew_matrix(params(), trunc(), rng, q);
  return make_connection(ModuleSpec{q}, A1, A2, A3);
}

Connection central(double t) {
  const AlgebraMatrix z(1, params(), trunc());
  return make_connection(ModuleSpec{1}, z, z, scalar_matrix(1, kI * t * one()));
}

ModuleVector random_vector(int q, std::uint64_t seed) {
  Rng rng(seed);
  ModuleVector v;
  for (int k = 0; k < q; ++k) v.push_back(random_element(params(), trunc(), rng));
  return v;
}

ModuleVector sub(const ModuleVector& a, const ModuleVector& b) {
  ModuleVector out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
  return out;
}

ModuleVector add(const ModuleVector& a, const ModuleVector& b) {
  ModuleVector out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
  return out;
}

ModuleVector times(cplx s, const ModuleVector& a) {
  ModuleVector out = a;
  for (auto& e : out) e = s * e;
  return out;
}

double norm(const ModuleVector& v) {
  double acc = 0.0;
  for (const auto& e : v) acc += l2_norm(e) * l2_norm(e);
  return std::sqrt(acc);
}

ModuleVector nabla(const Connection& c, int j, const ModuleVector& v) {
  return apply_connection(c, DerivationId(j), v);
}

ModuleVector tilde(const Connection& c, int j, const ModuleVector& v) {
  return apply_spectral(c, DerivationId(j), v);
}

/// [X_j, X_k] applied to v for operator families X.
template <class Op>
ModuleVector op_comm(Op op, int j, int k, const ModuleVector& v) {
  return sub(op(j, op(k, v)), op(k, op(j, v)));
}

}  // namespace

TEST_SUITE("connections") {

TEST_CASE("hermitian structure") {
  const ModuleVector e1{one(), zero()};
  CHECK(herm(e1, e1) == one());
  const auto xi = random_vector(2, 1);
  const auto eta = random_vector(2, 2);
  const auto a = rand_elem(3);
  const auto h = herm(xi, eta);
  const double s = norm(xi) * norm(eta);
  CHECK(rel(l2_norm(involution(h) - herm(eta, xi)), s) < 1e-6);
  CHECK(rel(l2_norm(herm(xi, right_multiply(eta, a)) - star(h, a)), s * l2_norm(a)) < 1e-6);
  CHECK_THROWS_AS(herm(xi, ModuleVector{one()}), ConfigError);
}

TEST_CASE("make_connection") {
  const auto flat = flat_connection(ModuleSpec{1}, params(), trunc());
  const AlgebraMatrix z(1, params(), trunc());
  CHECK(make_connection(ModuleSpec{1}, z, z, z).A[2] == flat.A[2]);
  const auto xi = random_vector(1, 4);
  for (int j = 1; j <= 3; ++j)
    CHECK(nabla(flat, j, xi)[0] == derive(DerivationId(j), xi[0]));

  AlgebraMatrix bad(1, params(), trunc());
  bad(0, 0) = one();
  CHECK_THROWS_AS(make_connection(ModuleSpec{1}, bad, z, z), ConfigError);
  const AlgebraMatrix z2(2, params(), trunc());
  CHECK_THROWS_AS(make_connection(ModuleSpec{1}, z2, z2, z2), ConfigError);
}

TEST_CASE("connection Leibniz and compatibility") {
  for (int q : {1, 2}) {
    const auto conn = random_conn(q, 10 + q);
    const auto xi = random_vector(q, 20 + q);
    const auto eta = random_vector(q, 30 + q);
    const auto a = rand_elem(40 + q);
    for (int j = 1; j <= 3; ++j) {
      const auto lhs = nabla(conn, j, right_multiply(xi, a));
      auto dxa = xi;
      for (auto& e : dxa) e = star(e, derive(DerivationId(j), a));
      const auto rhs = add(right_multiply(nabla(conn, j, xi), a), dxa);
      CHECK(rel(norm(sub(lhs, rhs)), norm(xi) * l2_norm(a)) < 1e-6);

      const auto dh = derive(DerivationId(j), herm(xi, eta));
      const auto sum = herm(nabla(conn, j, xi), eta) + herm(xi, nabla(conn, j, eta));
      CHECK(rel(l2_norm(dh - sum), norm(xi) * norm(eta)) < 1e-6);

      // spectral form: delta_j <xi, eta> = <xi, ~nabla eta> - <~nabla xi, eta>
      const auto sh = delta(DerivationId(j), herm(xi, eta));
      const auto ssum = herm(xi, tilde(conn, j, eta)) - herm(tilde(conn, j, xi), eta);
      CHECK(rel(l2_norm(sh - ssum), norm(xi) * norm(eta)) < 1e-6);
    }
  }
}

TEST_CASE("curvature examples") {
  const auto flat = flat_connection(ModuleSpec{1}, params(), trunc());
  const auto f = cr_curvature(flat);
  CHECK(frobenius_norm(f.F13) == 0.0);
  CHECK(frobenius_norm(f.F23) == 0.0);
  CHECK(frobenius_norm(f.F12) == 0.0);
  CHECK(ym_cr(flat) == 0.0);

  const double t = 0.7, alpha = params().alpha;
  const auto c = cr_curvature(central(t));
  CHECK(frobenius_norm(c.F13) == 0.0);
  CHECK(frobenius_norm(c.F23) == 0.0);
  CHECK(max_abs_diff(c.F12(0, 0), kI * (t / alpha) * one()) < 1e-15);
  CHECK(std::abs(ym_cr(central(t)) - t * t / (alpha * alpha)) < 1e-10);
}

TEST_CASE("curvature matches operator commutators") {
  const double alpha = params().alpha;
  for (int q : {1, 2}) {
    const auto conn = random_conn(q, 50 + q);
    const auto f = cr_curvature(conn);
    const auto xi = random_vector(q, 60 + q);
    auto op = [&](int j, const ModuleVector& v) { return nabla(conn, j, v); };
    const double s = norm(xi);
    CHECK(rel(norm(sub(op_comm(op, 1, 3, xi), apply_matrix(f.F13, xi))), s) < 1e-6);
    CHECK(rel(norm(sub(op_comm(op, 2, 3, xi), apply_matrix(f.F23, xi))), s) < 1e-6);
    const auto f12 = add(op_comm(op, 1, 2, xi), times(1.0 / alpha, nabla(conn, 3, xi)));
    CHECK(rel(norm(sub(f12, apply_matrix(f.F12, xi))), s) < 1e-6);
    // curvature of a skew connection is skew
    const double fs = frobenius_norm(f.F12);
    CHECK(rel(frobenius_norm(f.F12 + adjoint(f.F12)), fs) < 1e-6);
  }
}

TEST_CASE("Yang-Mills positivity") {
  for (std::uint64_t s = 1; s <= 3; ++s)
    for (int q : {1, 2}) {
      const auto r = ym_cr_checked(random_conn(q, s));
      CHECK(r.value > 0.0);
      CHECK(std::abs(r.imag) <= kImagTolerance * r.scale);
    }
}

TEST_CASE("spectral connection forms") {
  const auto flat = flat_connection(ModuleSpec{2}, params(), trunc());
  const auto w0 = to_spectral(flat);
  for (const auto& e : w0.entries) CHECK(max_l2(e) == 0.0);
  const auto th0 = spectral_theta(w0);
  for (const auto& e : th0.entries) CHECK(max_l2(e) == 0.0);
  CHECK(ym_spectral(th0) == 0.0);

  const auto conn = random_conn(2, 7);
  const auto w = to_spectral(conn);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      for (int l = 1; l <= 3; ++l) CHECK(w(k, j)[l] == kI * conn.A[l - 1](k, j));
}

TEST_CASE("spectral curvature of the central family") {
  const double t = 0.7, alpha = params().alpha;
  const auto th = spectral_theta(to_spectral(central(t)));
  CHECK(l2_norm(th(0, 0)[1]) == 0.0);
  CHECK(l2_norm(th(0, 0)[2]) == 0.0);
  CHECK(max_abs_diff(th(0, 0)[3], cplx{t / alpha, 0.0} * one()) < 1e-15);
  CHECK(std::abs(ym_spectral(th) - t * t / (2.0 * alpha * alpha)) < 1e-10);
  const auto rep = equivalence_report(central(t));
  CHECK(rep.residual <= 1e-10);
  CHECK(std::abs(rep.ym_cr - t * t / (alpha * alpha)) < 1e-10);
  CHECK(std::abs(rep.ym_spectral - t * t / (2.0 * alpha * alpha)) < 1e-10);
}

TEST_CASE("spectral curvature as commutators of the spectral connection") {
  // Theta = (i[~n2,~n3], i[~n3,~n1], i[~n1,~n2] - (1/alpha) ~n3) as multipliers
  const double alpha = params().alpha;
  const auto conn = random_conn(1, 8);
  const auto th = spectral_theta(to_spectral(conn));
  const auto xi = random_vector(1, 9);
  auto op = [&](int j, const ModuleVector& v) { return tilde(conn, j, v); };
  const std::array<ModuleVector, 3> want{
      times(kI, op_comm(op, 2, 3, xi)), times(kI, op_comm(op, 3, 1, xi)),
      sub(times(kI, op_comm(op, 1, 2, xi)), times(1.0 / alpha, op(3, xi)))};
  for (int l = 1; l <= 3; ++l) {
    const ModuleVector got{star(th(0, 0)[l], xi[0])};
    CHECK(rel(norm(sub(got, want[l - 1])), norm(xi)) < 1e-6);
  }
}

TEST_CASE("ym_spectral is quadratic") {
  const auto th = spectral_theta(to_spectral(random_conn(1, 3)));
  auto scaled = th;
  const double lambda = 1.7;
  for (auto& e : scaled.entries) e = cplx{lambda, 0.0} * e;
  const double v = ym_spectral(th);
  CHECK(std::abs(ym_spectral(scaled) - lambda * lambda * v) < 1e-12 * v);
}

TEST_CASE("the two Yang-Mills functionals agree") {
  const auto flat = equivalence_report(flat_connection(ModuleSpec{1}, params(), trunc()));
  CHECK(flat.ym_cr == 0.0);
  CHECK(flat.ym_spectral == 0.0);
  CHECK(flat.residual == 0.0);
  for (int q : {1, 2})
    for (std::uint64_t s = 1; s <= 2; ++s) {
      const auto r = equivalence_report(random_conn(q, s));
      CHECK(r.residual <= 1e-5);
      CHECK(r.predicted_ratio == 0.5);
      CHECK(r.q == q);
    }
  FormsConfig cfg;
  cfg.C_D = 2.5;
  const auto r = equivalence_report(random_conn(1, 4), cfg);
  CHECK(r.predicted_ratio == 1.25);
  CHECK(r.residual <= 1e-5);
}

TEST_CASE("adjoint identity of curvature commutators") {
  // herm(xi, [~k,~j] eta) - herm([~j,~k] xi, eta) = [delta_k, delta_j] herm(xi, eta)
  const auto conn = random_conn(2, 12);
  const auto xi = random_vector(2, 13);
  const auto eta = random_vector(2, 14);
  const auto h = herm(xi, eta);
  auto op = [&](int j, const ModuleVector& v) { return tilde(conn, j, v); };
  for (int k = 1; k <= 3; ++k)
    for (int j = 1; j <= 3; ++j) {
      if (j == k) continue;
      const auto lhs = herm(xi, op_comm(op, k, j, eta)) - herm(op_comm(op, j, k, xi), eta);
      const auto rhs = delta(DerivationId(k), delta(DerivationId(j), h)) -
                       delta(DerivationId(j), delta(DerivationId(k), h));
      CHECK(rel(l2_norm(lhs - rhs), norm(xi) * norm(eta)) < 1e-6);
    }
}

TEST_CASE("gauge covariance") {
  const auto conn = random_conn(1, 15);
  const double v = ym_cr(conn);
  for (auto [m, n] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{-1, 2}}) {
    const auto u = fourier_element(params(), trunc(), m, n);
    CHECK(max_abs_diff(star(involution(u), u), one()) < 1e-14);
    const auto g = gauge_transform(conn, u);
    CHECK(std::abs(ym_cr(g) - v) < 1e-6 * v);
    CHECK(equivalence_report(g).residual <= 1e-5);
  }
  CHECK_THROWS_AS(gauge_transform(random_conn(2, 1), one()), ConfigError);
  CHECK_THROWS_AS(gauge_transform(conn, cplx{2.0, 0.0} * one()), ConfigError);
}

}  // TEST_SUITE
