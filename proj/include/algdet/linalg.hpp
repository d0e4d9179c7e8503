#pragma once
#include <cstddef>
#include <optional>
#include <vector>

#include "algdet/field.hpp"

namespace algdet {

// Dense row-major matrix of scalars over one field.
struct FMatrix {
  FieldSpec spec{};
  std::size_t rows = 0, cols = 0;
  std::vector<FieldValue> a;

  static FMatrix zero(const FieldSpec& s, std::size_t r, std::size_t c);
  static FMatrix identity(const FieldSpec& s, std::size_t n);

  FieldValue& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const FieldValue& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const FMatrix& o) const;
};

FMatrix mat_mul(const FMatrix& x, const FMatrix& y);
std::vector<FieldValue> mat_vec(const FMatrix& m, const std::vector<FieldValue>& v);

// Reduced row echelon form: leading coefficients 1, pivots in lexicographic
// column order, zero rows dropped. Canonical for a given row space.
FMatrix rref(FMatrix m, std::vector<std::size_t>* pivot_cols = nullptr);

// Basis of the right kernel {x : m x = 0}, returned as RREF rows.
FMatrix kernel_basis(const FMatrix& m);

// Reduce v against RREF rows: subtracts multiples so that every pivot
// coordinate of the result is zero. The remainder is the canonical coset
// representative of v modulo the row space.
std::vector<FieldValue> reduce_against(const FMatrix& rref_rows,
                                       const std::vector<std::size_t>& pivot_cols,
                                       std::vector<FieldValue> v);

// Exact scalar determinant: Gaussian elimination over GF(p), fraction-free
// (Bareiss) elimination over the rationals.
FieldValue det_scalar(const FMatrix& m);

std::optional<FMatrix> inverse(const FMatrix& m);

// One particular solution of A x = b (free variables zero), or nullopt when
// the system is inconsistent.
std::optional<std::vector<FieldValue>> solve(const FMatrix& A, const std::vector<FieldValue>& b);

}  // namespace algdet
