#pragma once

#include <cstdint>

#include "qhm/element.hpp"
#include "qhm/random.hpp"
#include "qhm/star.hpp"

namespace qhm::test {

inline AlgebraParams params() { return {}; }
inline Truncation trunc() { return {}; }

inline Truncation trunc_nx(int nx) {
  Truncation t;
  t.Nx = nx;
  return t;
}

inline AlgebraElement rand_elem(std::uint64_t seed, const Truncation& t = trunc()) {
  return random_element(params(), t, seed);
}

inline double rel(double num, double den) { return den > 0.0 ? num / den : num; }

/// l2 distance divided by the l2 norm of the reference (absolute when it is 0).
inline double rel_diff(const AlgebraElement& a, const AlgebraElement& ref) {
  return rel(l2_norm(a - ref), l2_norm(ref));
}

}  // namespace qhm::test
