#include <doctest.h>

#include <cmath>

#include "qhm/forms.hpp"
#include "qhm/symmetry.hpp"
#include "support.hpp"

using namespace qhm;
using namespace qhm::test;

namespace {

constexpr cplx kI{0.0, 1.0};

AlgebraElement zero() { return zero_element(params(), trunc()); }
AlgebraElement one() { return identity(params(), trunc()); }

double max_diff(const TwoForm& x, const TwoForm& y) { return max_l2(x - y); }

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("pauli structure constants") {
  auto p = pauli_mul(1, 2);
  CHECK(p.coeff == kI);
  CHECK(p.index == 3);
  p = pauli_mul(2, 1);
  CHECK(p.coeff == -kI);
  CHECK(p.index == 3);
  p = pauli_mul(2, 3);
  CHECK((p.coeff == kI && p.index == 1));
  p = pauli_mul(3, 1);
  CHECK((p.coeff == kI && p.index == 2));
  for (int j = 1; j <= 3; ++j) {
    p = pauli_mul(j, j);
    CHECK((p.coeff == cplx{1.0, 0.0} && p.index == 0));
    for (int k = 1; k <= 3; ++k)
      if (j != k) {
        CHECK(pauli_mul(j, k).coeff == -pauli_mul(k, j).coeff);
        CHECK(pauli_mul(j, k).index == pauli_mul(k, j).index);
      }
  }
  CHECK_THROWS_AS(pauli_mul(0, 1), ConfigError);
  CHECK_THROWS_AS(pauli_mul(1, 4), ConfigError);
}

TEST_CASE("d0 examples") {
  const auto w = d0(one());
  for (int j = 1; j <= 3; ++j) CHECK(l2_norm(w[j]) == 0.0);
  const auto f10 = fourier_element(params(), trunc(), 1, 0);
  const auto f01 = fourier_element(params(), trunc(), 0, 1);
  const auto a = d0(f10);
  CHECK(rel_diff(a[1], cplx{kTwoPi, 0.0} * f10) < 1e-9);
  CHECK(l2_norm(a[2]) == 0.0);
  CHECK(l2_norm(a[3]) == 0.0);
  const auto b = d0(f01);
  CHECK(l2_norm(b[1]) == 0.0);
  CHECK(rel_diff(b[2], cplx{kTwoPi, 0.0} * f01) < 1e-15);
  CHECK(l2_norm(b[3]) == 0.0);
}

TEST_CASE("mul11 examples") {
  const OneForm s1{{one(), zero(), zero()}};
  CHECK(max_l2(mul11(s1, s1)) == 0.0);
  const auto a = rand_elem(1);
  const auto b = rand_elem(2);
  const auto m = mul11(OneForm{{a, zero(), zero()}}, OneForm{{zero(), b, zero()}});
  CHECK(l2_norm(m[1]) == 0.0);
  CHECK(l2_norm(m[2]) == 0.0);
  CHECK(m[3] == kI * star(a, b));
  const OneForm ones{{one(), one(), one()}};
  CHECK(max_l2(mul11(ones, ones)) == 0.0);
}

TEST_CASE("mul11 explicit coordinates") {
  const OneForm w{{rand_elem(1), rand_elem(2), rand_elem(3)}};
  const OneForm e{{rand_elem(4), rand_elem(5), rand_elem(6)}};
  const auto m = mul11(w, e);
  const TwoForm want{{kI * (star(w[2], e[3]) - star(w[3], e[2])),
                      kI * (star(w[3], e[1]) - star(w[1], e[3])),
                      kI * (star(w[1], e[2]) - star(w[2], e[1]))}};
  CHECK(max_diff(m, want) < 1e-14);
}

TEST_CASE("d1form on constants") {
  const double alpha = params().alpha;
  const auto c3 = d1form(OneForm{{zero(), zero(), one()}});
  CHECK(l2_norm(c3[1]) == 0.0);
  CHECK(l2_norm(c3[2]) == 0.0);
  CHECK(c3[3] == cplx{-1.0 / alpha, 0.0} * one());
  CHECK(max_l2(d1form(OneForm{{one(), zero(), zero()}})) == 0.0);
  CHECK(max_l2(d1form(OneForm{{zero(), one(), zero()}})) == 0.0);
}

TEST_CASE("d1form coordinate rule") {
  const auto a = rand_elem(7);
  const DerivationId d1(1), d2(2), d3(3);
  const double alpha = params().alpha;
  const auto x1 = d1form(OneForm{{a, zero(), zero()}});
  CHECK(max_diff(x1, TwoForm{{zero(), kI * delta(d3, a), -kI * delta(d2, a)}}) < 1e-12);
  const auto x2 = d1form(OneForm{{zero(), a, zero()}});
  CHECK(max_diff(x2, TwoForm{{-kI * delta(d3, a), zero(), kI * delta(d1, a)}}) < 1e-12);
  const auto x3 = d1form(OneForm{{zero(), zero(), a}});
  CHECK(max_diff(x3, TwoForm{{kI * delta(d2, a), -kI * delta(d1, a),
                              cplx{-1.0 / alpha, 0.0} * a}}) < 1e-12);
}

TEST_CASE("d1form squares to zero and the flipped sign does not") {
  FormsConfig flipped;
  flipped.flip_alpha_sign = true;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto a = rand_elem(s);
    const auto da = d0(a);
    CHECK(rel(max_l2(d1form(da)), l2_norm(a)) < 1e-6);
    CHECK(rel(max_l2(d1form(da, flipped)), l2_norm(a)) > 1e-1);
  }
}

TEST_CASE("Leibniz for the form differential") {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto a = rand_elem(2 * s);
    const auto b = rand_elem(2 * s + 1);
    const auto da = d0(a);
    const auto db = d0(b);
    const auto lhs = d1form(scale(a, db));
    const auto rhs = mul11(da, db);
    CHECK(rel(max_diff(lhs, rhs), max_l2(da) * max_l2(db)) < 1e-6);
  }
}

TEST_CASE("two-form inner product") {
  FormsConfig cfg;
  const TwoForm e1{{one(), zero(), zero()}};
  // weight (C_D / 2) per sigma coordinate
  CHECK(two_form_inner(e1, e1, cfg) == cplx{0.5, 0.0});
  cfg.C_D = 3.0;
  CHECK(two_form_inner(e1, e1, cfg) == cplx{1.5, 0.0});
  cfg.C_D = 1.0;

  const auto a = rand_elem(1);
  const auto b = rand_elem(2);
  CHECK(two_form_inner(TwoForm{{a, zero(), zero()}}, TwoForm{{zero(), b, zero()}}) == cplx{});

  const TwoForm x{{rand_elem(3), rand_elem(4), rand_elem(5)}};
  const TwoForm y{{rand_elem(6), rand_elem(7), rand_elem(8)}};
  const cplx xy = two_form_inner(x, y);
  const cplx yx = two_form_inner(y, x);
  CHECK(std::abs(xy - std::conj(yx)) < 1e-12 * (1.0 + std::abs(xy)));
  const cplx xx = two_form_inner(x, x);
  CHECK(xx.real() > 0.0);
  CHECK(std::abs(xx.imag()) < 1e-12 * xx.real());
  // sesquilinear: conjugate-linear left, linear right
  const cplx s{0.3, -1.2};
  CHECK(std::abs(two_form_inner(x, s * y) - s * xy) < 1e-12 * std::abs(xy));
  CHECK(std::abs(two_form_inner(s * x, y) - std::conj(s) * xy) < 1e-12 * std::abs(xy));

  FormsConfig bad;
  bad.C_D = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

}  // TEST_SUITE
