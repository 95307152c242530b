#pragma once

#include <optional>

#include "qhm/element.hpp"

namespace qhm {

struct StarResult {
  AlgebraElement product;
  /// l2 mass of the extended-band components dropped when projecting onto
  /// the output window.
  double truncation_mass = 0.0;
};

/// Deformed product
///
///   (Phi * Psi)_{p,n}(x) = sum_q sum_{n1+n2=n} phi_{q,n1}(x - hbar (q-p) mu)
///                           psi_{p-q,n2}(x - hbar q mu)
///                           e(-(n1 (q-p) + n2 q) hbar nu).
///
/// Computed over the full extended window (P_a + P_b, N_a + N_b) and then
/// projected onto out_trunc (defaults to the left factor's truncation).
/// Summation order is fixed: p, q, n1, n2 ascending.
StarResult star_checked(const AlgebraElement& a, const AlgebraElement& b,
                        std::optional<Truncation> out_trunc = std::nullopt);

AlgebraElement star(const AlgebraElement& a, const AlgebraElement& b,
                    std::optional<Truncation> out_trunc = std::nullopt);

/// Reverse-mode companion of star. For a real functional f with
/// df = Re <grad_out, d(a*b)>, adds Re-pairing gradients into grad_a and
/// grad_b (which must live in the spaces of a and b).
void star_vjp(const AlgebraElement& a, const AlgebraElement& b,
              const AlgebraElement& grad_out, AlgebraElement& grad_a,
              AlgebraElement& grad_b);

/// tau(a * b) without materializing the product.
cplx trace_of_product(const AlgebraElement& a, const AlgebraElement& b);

inline AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return star(a, b) - star(b, a);
}

}  // namespace qhm
