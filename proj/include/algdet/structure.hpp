#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algdet/algebra.hpp"

namespace algdet {

// Optional user-supplied structure data, e.g. when the generic radical method
// is unavailable for the field characteristic. Rows are coordinate vectors.
struct StructureOverride {
  std::optional<FMatrix> radical_rows;
  std::optional<FMatrix> complement_rows;
};

// Radical of A as a canonical subspace. Constructor-tagged algebras use their
// known answers; otherwise the kernel of the trace form of the regular
// representation is used, which needs characteristic 0 or p > dim A.
// Whatever the method, the result is verified to be a two-sided nilpotent
// ideal before it is returned.
Subspace radical(const AlgebraPtr& a, const StructureOverride* ov = nullptr);

// Least d with R^d = 0, where R must be the radical of a; d = 1 iff R = 0.
int nilpotency_index(const AlgebraPtr& a, const Subspace& r);

// A = B (+) R as vector spaces, with B a unital subalgebra isomorphic to A/R.
struct WMDecomposition {
  AlgebraPtr alg;
  Subspace b_basis;       // the semisimple complement B
  Subspace r_basis;       // the radical R
  AlgebraPtr b_algebra;   // B with structure constants in the b_basis basis
  AlgebraPtr quot;        // A / R
  int d = 1;              // nilpotency index of R

  // columns of split_basis: B basis vectors then R basis vectors
  FMatrix split_basis;
  FMatrix split_inverse;

  AlgebraElement project_b(const AlgebraElement& x) const;
  AlgebraElement project_r(const AlgebraElement& x) const;
  // coordinates of the B-component of x in the b_basis basis
  std::vector<FieldValue> b_coordinates(const AlgebraElement& x) const;
};

// Computes the decomposition by quadratic lifting of a linear section of
// A -> A/R, then verifies every invariant (B closed under multiplication,
// 1 in B, direct sum, commutativity of B agrees with commutativity of A/R).
WMDecomposition wm_decompose(const AlgebraPtr& a, const StructureOverride* ov = nullptr);

struct DichotomyReport {
  bool easy = false;
  int d = 1;                 // nilpotency index (meaningful for easy verdicts)
  bool quotient_commutative = false;
  // labels of a noncommuting basis pair of A/R (hard verdicts)
  std::optional<std::pair<std::string, std::string>> witness;
  // set when the hardness side is not established for this field
  std::optional<std::string> field_caveat;
};

DichotomyReport classify(const AlgebraPtr& a, const StructureOverride* ov = nullptr);

}  // namespace algdet
