#include <doctest.h>

#include <cmath>

#include "qhm/rep_oracle.hpp"
#include "support.hpp"

using namespace qhm;
using namespace qhm::test;

namespace {

std::vector<RepVector> trial(const RepGrid& g, int p_support, std::uint64_t seed, int count = 3) {
  Rng rng(seed);
  std::vector<RepVector> out;
  for (int k = 0; k < count; ++k)
    out.push_back(random_trial_vector(g, oracle_margin(params(), trunc()), p_support, 2, rng));
  return out;
}

}  // namespace

TEST_SUITE("rep_oracle") {

TEST_CASE("grid and margins") {
  RepGrid g;
  CHECK_NOTHROW(g.validate());
  CHECK(g.dim() == static_cast<std::size_t>(64 * 33 * 7));
  CHECK(oracle_margin(params(), trunc()) ==
        doctest::Approx(1.0 + params().hbar * 2 * trunc().P * std::abs(params().mu)));
  RepGrid bad;
  bad.Mx = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  RepGrid narrow;
  narrow.X = 1.5;
  const auto a = rand_elem(1);
  CHECK_THROWS_AS(oracle_check_product(a, a, narrow, trial(RepGrid{}, 1, 1)), ConfigError);
}

TEST_CASE("identity is represented by the identity") {
  const RepGrid g;
  const auto r = build_rep(identity(params(), trunc()), g);
  for (const auto& b : r.blocks) CHECK((b - Eigen::MatrixXcd::Identity(b.rows(), b.cols())).norm() == 0.0);
  const auto one = identity(params(), trunc());
  CHECK(oracle_check_product(one, one, g, trial(g, 1, 2)).residual == 0.0);
}

TEST_CASE("multiplication by e(y) shifts frequencies") {
  // pi evaluates Phi at y + 2 p hbar nu on the p-diagonal, so e(y) carries the
  // phase e(2 p hbar nu) alongside the shift n -> n + 1
  const RepGrid g;
  const auto r = build_rep(fourier_element(params(), trunc(), 0, 1), g);
  double worst = 0.0;
  for (const auto& b : r.blocks)
    for (int p = -g.Pv; p <= g.Pv; ++p)
      for (int n = -g.Ny; n <= g.Ny; ++n)
        for (int pp = -g.Pv; pp <= g.Pv; ++pp)
          for (int m = -g.Ny; m <= g.Ny; ++m) {
            const cplx want = (pp == p && m == n + 1)
                                  ? unit_phase(2.0 * p * params().hbar * params().nu)
                                  : cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(b(g.local(m, pp), g.local(n, p)) - want));
          }
  CHECK(worst < 1e-14);
}

TEST_CASE("star representation") {
  const RepGrid g;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto a = rand_elem(s);
    CHECK(oracle_check_adjoint(a, g, trial(g, 1, s)) <= 1e-10 * sup_bound(a));
  }
}

TEST_CASE("homomorphism on p = 0 factors") {
  const RepGrid g;
  Rng rng(3);
  const auto a = random_p0_element(params(), trunc(), rng);
  const auto b = random_p0_element(params(), trunc(), rng);
  CHECK(oracle_check_product(a, b, g, trial(g, 0, 4)).relative <= 1e-10);
}

TEST_CASE("homomorphism on random elements") {
  const RepGrid g;
  for (std::uint64_t s = 1; s <= 2; ++s) {
    const auto res = oracle_check_product(rand_elem(2 * s), rand_elem(2 * s + 1), g, trial(g, 1, s));
    CHECK(res.relative <= 1e-5);
    CHECK(res.truncation_mass == 0.0);
  }
}

TEST_CASE("oracle residual converges under refinement") {
  // the star product and pi share the same interpolation order
  const RepGrid coarse;
  Truncation t32 = trunc_nx(32);
  const auto a32 = rand_elem(5, t32);
  const auto b32 = rand_elem(6, t32);
  const auto a64 = rand_elem(5);
  const auto b64 = rand_elem(6);
  const double r32 = oracle_check_product(a32, b32, coarse, trial(coarse, 1, 7)).relative;
  const double r64 = oracle_check_product(a64, b64, coarse, trial(coarse, 1, 7)).relative;
  CHECK(r32 / r64 > 32.0);
}

TEST_CASE("element hashes") {
  CHECK(element_hash(rand_elem(1)) == element_hash(rand_elem(1)));
  CHECK(element_hash(rand_elem(1)) != element_hash(rand_elem(2)));
  const RepGrid g;
  const auto a = rand_elem(1);
  CHECK(build_rep(a, g).source_hash == element_hash(a));
}

}  // TEST_SUITE
