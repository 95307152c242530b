#pragma once

#include <cstdint>
#include <random>

#include "qhm/element.hpp"
#include "qhm/matrix.hpp"
#include "qhm/symmetry.hpp"

namespace qhm {

using Rng = std::mt19937_64;

/// Shape of seeded random test elements: p = 0 Fourier modes e(m x + n y)
/// with |m| <= M0, |n| <= N0 plus Gaussian profiles in sectors 0 < |p| <= P0.
/// Magnitudes decay like amplitude * exp(-decay (|m| + |n|)).
struct ProfileSpec {
  int P0 = 1;
  int N0 = 4;
  int M0 = 1;
  double width = 0.45;
  double center_min = 0.48;
  double center_max = 0.52;
  int zak_terms = 2;
  double amplitude = 0.5;
  double decay = 1.0;
};

AlgebraElement random_element(const AlgebraParams& params, const Truncation& trunc,
                              Rng& rng, const ProfileSpec& spec = {});
AlgebraElement random_element(const AlgebraParams& params, const Truncation& trunc,
                              std::uint64_t seed, const ProfileSpec& spec = {});

/// Only p = 0 Fourier content.
AlgebraElement random_p0_element(const AlgebraParams& params, const Truncation& trunc,
                                 Rng& rng, const ProfileSpec& spec = {});

/// M = (R - R^*) / 2 with R random; skew (M^* = -M) exactly.
AlgebraMatrix random_skew_matrix(const AlgebraParams& params, const Truncation& trunc,
                                 std::uint64_t seed, int q, const ProfileSpec& spec = {});
AlgebraMatrix random_skew_matrix(const AlgebraParams& params, const Truncation& trunc,
                                 Rng& rng, int q, const ProfileSpec& spec = {});

/// Uniform on [-range, range]^3.
GroupElement random_group_element(Rng& rng, double range = 1.0);

}  // namespace qhm
