#include "qhm/forms.hpp"

#include <algorithm>

#include "qhm/star.hpp"
#include "qhm/symmetry.hpp"

namespace qhm {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_same_space(const AlgebraElement& a, const AlgebraElement& b, const char* what) {
  if (!a.same_space(b)) throw ConfigError(std::string(what) + ": params or truncation mismatch");
}

}  // namespace

PauliProduct pauli_mul(int j, int k) {
  if (j < 1 || j > 3 || k < 1 || k > 3) throw ConfigError("pauli index must be 1, 2 or 3");
  if (j == k) return {{1.0, 0.0}, 0};
  const int l = 6 - j - k;
  // cyclic (1,2,3) order gives +i
  const bool cyclic = (k - j + 3) % 3 == 1;
  return {cyclic ? kI : -kI, l};
}

void FormsConfig::validate() const {
  if (!(C_D > 0.0)) throw ConfigError("C_D must be > 0");
}

OneForm zero_one_form(const AlgebraParams& params, const Truncation& trunc) {
  AlgebraElement z(params, trunc);
  return {{z, z, z}};
}

TwoForm zero_two_form(const AlgebraParams& params, const Truncation& trunc) {
  AlgebraElement z(params, trunc);
  return {{z, z, z}};
}

OneForm operator+(const OneForm& x, const OneForm& y) {
  return {{x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2]}};
}

OneForm operator-(const OneForm& x, const OneForm& y) {
  return {{x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2]}};
}

TwoForm operator+(const TwoForm& x, const TwoForm& y) {
  return {{x.b[0] + y.b[0], x.b[1] + y.b[1], x.b[2] + y.b[2]}};
}

TwoForm operator-(const TwoForm& x, const TwoForm& y) {
  return {{x.b[0] - y.b[0], x.b[1] - y.b[1], x.b[2] - y.b[2]}};
}

TwoForm operator*(cplx s, const TwoForm& x) { return {{s * x.b[0], s * x.b[1], s * x.b[2]}}; }

OneForm d0(const AlgebraElement& a) {
  return {{delta(DerivationId(1), a), delta(DerivationId(2), a), delta(DerivationId(3), a)}};
}

TwoForm mul11(const OneForm& omega, const OneForm& eta) {
  for (int j = 1; j <= 3; ++j) {
    require_same_space(omega[1], omega[j], "mul11");
    require_same_space(omega[1], eta[j], "mul11");
  }
  TwoForm out = zero_two_form(omega[1].params(), omega[1].trunc());
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      if (j == k) continue;
      const auto pm = pauli_mul(j, k);
      out[pm.index] += pm.coeff * star(omega[j], eta[k]);
    }
  return out;
}

TwoForm d1form(const OneForm& omega, const FormsConfig& cfg) {
  const auto& a1 = omega[1];
  const auto& a2 = omega[2];
  const auto& a3 = omega[3];
  require_same_space(a1, a2, "d1form");
  require_same_space(a1, a3, "d1form");
  const DerivationId D1(1), D2(2), D3(3);
  const double alpha = a1.params().alpha;
  const double sign = cfg.flip_alpha_sign ? 1.0 : -1.0;
  TwoForm out;
  out[1] = kI * (delta(D2, a3) - delta(D3, a2));
  out[2] = kI * (delta(D3, a1) - delta(D1, a3));
  out[3] = kI * (delta(D1, a2) - delta(D2, a1)) + cplx{sign / alpha, 0.0} * a3;
  return out;
}

OneForm scale(const AlgebraElement& a, const OneForm& omega) {
  return {{star(a, omega[1]), star(a, omega[2]), star(a, omega[3])}};
}

cplx two_form_inner(const TwoForm& x, const TwoForm& y, const FormsConfig& cfg) {
  cfg.validate();
  cplx acc{0.0, 0.0};
  for (int j = 1; j <= 3; ++j) {
    require_same_space(x[j], y[j], "two_form_inner");
    acc += trace_of_product(involution(x[j]), y[j]);
  }
  return 0.5 * cfg.C_D * acc;
}

double max_l2(const TwoForm& x) {
  double worst = 0.0;
  for (const auto& e : x.b) worst = std::max(worst, l2_norm(e));
  return worst;
}

double max_l2(const OneForm& x) {
  double worst = 0.0;
  for (const auto& e : x.a) worst = std::max(worst, l2_norm(e));
  return worst;
}

}  // namespace qhm
