#pragma once

#include <vector>

#include "qhm/element.hpp"
#include "qhm/symmetry.hpp"

namespace qhm {

/// Square q x q matrix over the algebra, stored row-major.
class AlgebraMatrix {
 public:
  AlgebraMatrix() = default;
  AlgebraMatrix(int q, const AlgebraParams& params, const Truncation& trunc);

  int size() const { return q_; }
  const AlgebraParams& params() const { return entries_.front().params(); }
  const Truncation& trunc() const { return entries_.front().trunc(); }

  AlgebraElement& operator()(int j, int k) { return entries_[j * q_ + k]; }
  const AlgebraElement& operator()(int j, int k) const { return entries_[j * q_ + k]; }

  std::vector<AlgebraElement>& entries() { return entries_; }
  const std::vector<AlgebraElement>& entries() const { return entries_; }

  friend bool operator==(const AlgebraMatrix&, const AlgebraMatrix&) = default;

 private:
  int q_ = 0;
  std::vector<AlgebraElement> entries_;
};

AlgebraMatrix scalar_matrix(int q, const AlgebraElement& diag);

AlgebraMatrix operator+(const AlgebraMatrix& a, const AlgebraMatrix& b);
AlgebraMatrix operator-(const AlgebraMatrix& a, const AlgebraMatrix& b);
AlgebraMatrix operator*(cplx s, const AlgebraMatrix& a);

/// Matrix product with star-multiplied entries.
AlgebraMatrix matmul(const AlgebraMatrix& a, const AlgebraMatrix& b);
AlgebraMatrix commutator(const AlgebraMatrix& a, const AlgebraMatrix& b);

/// Conjugate transpose with entrywise involution.
AlgebraMatrix adjoint(const AlgebraMatrix& a);

AlgebraMatrix derive(DerivationId j, const AlgebraMatrix& a);

/// Unnormalized trace: sum_m tau(a_mm).
cplx matrix_trace(const AlgebraMatrix& a);

/// Unnormalized trace of a product, sum_{m,k} tau(a_mk * b_km).
cplx matrix_trace_of_product(const AlgebraMatrix& a, const AlgebraMatrix& b);

/// sqrt(sum of squared entry l2 norms).
double frobenius_norm(const AlgebraMatrix& a);

/// max over entries of l2_norm(a + a*); zero exactly for skew matrices.
double skewness_defect(const AlgebraMatrix& a);

}  // namespace qhm
