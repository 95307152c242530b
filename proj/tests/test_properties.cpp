#include <doctest.h>

#include <cmath>

#include "qhm/symmetry.hpp"
#include "support.hpp"

using namespace qhm;
using namespace qhm::test;

// Invariants checked over a range of seeds and parameter choices.

namespace {

constexpr std::uint64_t kSeeds = 8;

AlgebraParams classical() {
  AlgebraParams p;
  p.hbar = 0.0;
  return p;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("associativity") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    CAPTURE(s);
    const auto a = rand_elem(3 * s), b = rand_elem(3 * s + 1), c = rand_elem(3 * s + 2);
    const auto left = star(star(a, b), c);
    const auto right = star(a, star(b, c));
    CHECK(rel(l2_norm(left - right), l2_norm(a) * l2_norm(b) * l2_norm(c)) <= 1e-6);
  }
}

TEST_CASE("trace property") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    CAPTURE(s);
    const auto a = rand_elem(2 * s), b = rand_elem(2 * s + 1);
    const double scale = l2_norm(a) * l2_norm(b);
    CHECK(std::abs(trace(star(a, b)) - trace(star(b, a))) <= 1e-6 * scale);
    CHECK(std::abs(trace_of_product(a, b) - trace(star(a, b))) <= 1e-12 * scale);
  }
}

TEST_CASE("involution reverses products") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    CAPTURE(s);
    const auto a = rand_elem(2 * s), b = rand_elem(2 * s + 1);
    const auto lhs = involution(star(a, b));
    const auto rhs = star(involution(b), involution(a));
    CHECK(rel(l2_norm(lhs - rhs), l2_norm(a) * l2_norm(b)) <= 1e-6);
    CHECK(involution(involution(a)) == a);
  }
}

TEST_CASE("positivity of a* a") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    CAPTURE(s);
    const auto a = rand_elem(s);
    const cplx t = trace(star(involution(a), a));
    const double n2 = l2_norm(a) * l2_norm(a);
    CHECK(std::abs(t.imag()) <= 1e-12 * n2);
    CHECK(std::abs(t.real() - n2) <= 1e-6 * n2);
  }
}

TEST_CASE("p = 0 elements commute") {
  Rng rng(11);
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    CAPTURE(s);
    const auto a = random_p0_element(params(), trunc(), rng);
    const auto b = random_p0_element(params(), trunc(), rng);
    CHECK(rel(l2_norm(commutator(a, b)), l2_norm(a) * l2_norm(b)) <= 1e-12);
  }
}

TEST_CASE("hbar = 0 is commutative") {
  const auto p = classical();
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    CAPTURE(s);
    const auto a = random_element(p, trunc(), 2 * s);
    const auto b = random_element(p, trunc(), 2 * s + 1);
    CHECK(rel(l2_norm(commutator(a, b)), l2_norm(a) * l2_norm(b)) <= 1e-12);
  }
}

TEST_CASE("bilinearity") {
  const cplx z{0.3, -1.2};
  for (std::uint64_t s = 1; s <= 4; ++s) {
    CAPTURE(s);
    const auto a = rand_elem(3 * s), b = rand_elem(3 * s + 1), c = rand_elem(3 * s + 2);
    const double scale = l2_norm(a) * (l2_norm(b) + l2_norm(c));
    CHECK(l2_norm(star(a, b + z * c) - (star(a, b) + z * star(a, c))) <= 1e-13 * scale);
    CHECK(l2_norm(star(b + z * c, a) - (star(b, a) + z * star(c, a))) <= 1e-13 * scale);
  }
}

TEST_CASE("invariants hold for other parameters") {
  AlgebraParams p;
  p.c = 2;
  p.hbar = 0.21;
  p.mu = 0.3;
  p.nu = -0.45;
  p.alpha = 3.5;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    CAPTURE(s);
    const auto a = random_element(p, trunc(), 3 * s);
    const auto b = random_element(p, trunc(), 3 * s + 1);
    const auto c = random_element(p, trunc(), 3 * s + 2);
    const double nab = l2_norm(a) * l2_norm(b);
    CHECK(rel(l2_norm(star(star(a, b), c) - star(a, star(b, c))), nab * l2_norm(c)) <= 1e-6);
    CHECK(std::abs(trace(commutator(a, b))) <= 1e-6 * nab);
    CHECK(rel(l2_norm(involution(star(a, b)) - star(involution(b), involution(a))), nab) <= 1e-6);
    for (int j = 1; j <= 3; ++j) {
      const DerivationId d(j);
      const auto lhs = derive(d, star(a, b));
      const auto rhs = star(derive(d, a), b) + star(a, derive(d, b));
      CHECK(rel(l2_norm(lhs - rhs), l2_norm(derive(d, a)) * l2_norm(b) +
                                        l2_norm(a) * l2_norm(derive(d, b))) <= 1e-6);
    }
  }
}

TEST_CASE("group action preserves the product") {
  Rng rng(5);
  for (std::uint64_t s = 1; s <= 4; ++s) {
    CAPTURE(s);
    const auto g = random_group_element(rng);
    const auto a = rand_elem(2 * s), b = rand_elem(2 * s + 1);
    const auto lhs = act(g, star(a, b));
    const auto rhs = star(act(g, a), act(g, b));
    CHECK(rel(l2_norm(lhs - rhs), l2_norm(a) * l2_norm(b)) <= 1e-6);
    CHECK(std::abs(trace(act(g, a)) - trace(a)) <= 1e-6 * l2_norm(a));
  }
}

}  // TEST_SUITE
