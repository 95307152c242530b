#include "qhm/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qhm/star.hpp"

namespace qhm {
namespace {

void require_same_shape(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  if (a.size() != b.size()) throw ConfigError("algebra matrices differ in size");
}

}  // namespace

AlgebraMatrix::AlgebraMatrix(int q, const AlgebraParams& params, const Truncation& trunc)
    : q_(q) {
  if (q < 1) throw ConfigError("matrix size must be >= 1");
  entries_.assign(static_cast<std::size_t>(q) * q, AlgebraElement(params, trunc));
}

AlgebraMatrix scalar_matrix(int q, const AlgebraElement& diag) {
  AlgebraMatrix m(q, diag.params(), diag.trunc());
  for (int j = 0; j < q; ++j) m(j, j) = diag;
  return m;
}

AlgebraMatrix operator+(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  require_same_shape(a, b);
  AlgebraMatrix out = a;
  for (std::size_t k = 0; k < out.entries().size(); ++k) out.entries()[k] += b.entries()[k];
  return out;
}

AlgebraMatrix operator-(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  require_same_shape(a, b);
  AlgebraMatrix out = a;
  for (std::size_t k = 0; k < out.entries().size(); ++k) out.entries()[k] -= b.entries()[k];
  return out;
}

AlgebraMatrix operator*(cplx s, const AlgebraMatrix& a) {
  AlgebraMatrix out = a;
  for (auto& e : out.entries()) e = s * e;
  return out;
}

AlgebraMatrix matmul(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  require_same_shape(a, b);
  const int q = a.size();
  AlgebraMatrix out(q, a.params(), a.trunc());
  for (int j = 0; j < q; ++j)
    for (int k = 0; k < q; ++k)
      for (int m = 0; m < q; ++m) out(j, k) += star(a(j, m), b(m, k));
  return out;
}

AlgebraMatrix commutator(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

AlgebraMatrix adjoint(const AlgebraMatrix& a) {
  const int q = a.size();
  AlgebraMatrix out(q, a.params(), a.trunc());
  for (int j = 0; j < q; ++j)
    for (int k = 0; k < q; ++k) out(j, k) = involution(a(k, j));
  return out;
}

AlgebraMatrix derive(DerivationId j, const AlgebraMatrix& a) {
  AlgebraMatrix out = a;
  for (auto& e : out.entries()) e = derive(j, e);
  return out;
}

cplx matrix_trace(const AlgebraMatrix& a) {
  cplx acc{0.0, 0.0};
  for (int m = 0; m < a.size(); ++m) acc += trace(a(m, m));
  return acc;
}

cplx matrix_trace_of_product(const AlgebraMatrix& a, const AlgebraMatrix& b) {
  require_same_shape(a, b);
  cplx acc{0.0, 0.0};
  for (int m = 0; m < a.size(); ++m)
    for (int k = 0; k < a.size(); ++k) acc += trace_of_product(a(m, k), b(k, m));
  return acc;
}

double frobenius_norm(const AlgebraMatrix& a) {
  double acc = 0.0;
  for (const auto& e : a.entries()) {
    const double v = l2_norm(e);
    acc += v * v;
  }
  return std::sqrt(acc);
}

double skewness_defect(const AlgebraMatrix& a) {
  double worst = 0.0;
  for (int j = 0; j < a.size(); ++j)
    for (int k = 0; k < a.size(); ++k)
      worst = std::max(worst, l2_norm(a(j, k) + involution(a(k, j))));
  return worst;
}

}  // namespace qhm
