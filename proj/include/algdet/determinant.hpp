#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "algdet/algebra.hpp"
#include "algdet/structure.hpp"

namespace algdet {

// Size guards: fail fast with an actionable message instead of a silent
// multi-hour run. Overridable per call, via CLI flags, and via the
// ALGDET_GUARD_OVERRIDE environment variable ("name=value,name=value" with
// names bruteforce, expansion, ryser, covers).
struct Guards {
  std::size_t bruteforce = 8;
  std::size_t expansion = 24;
  std::size_t ryser = 30;
  std::size_t covers = 14;
};

// Guards with ALGDET_GUARD_OVERRIDE applied on top of the defaults.
Guards guards_from_env();

struct DetOptions {
  Guards guards{};
  // compute the exponential-oracle value even for a hard algebra (det_auto)
  bool force_oracle = false;
  // test knob: force the generic element-domain path of det_cayley_expansion
  bool force_generic_expansion = false;
  const StructureOverride* structure = nullptr;
};

struct DetStats {
  unsigned long long sf_pairs = 0;  // (S, f) terms enumerated by det_general
};

// Sum over all permutations of sgn * row-ordered entry product. n! growth.
AlgebraElement det_cayley_bruteforce(const AlgMatrix& m, const Guards& g = {});
// Same without the sign.
AlgebraElement per_bruteforce(const AlgMatrix& m, const Guards& g = {});

// First-row Laplace expansion memoized on the remaining-column set: exact on
// any algebra because each entry is the leftmost factor of its stratum.
// 2^n * n memo entries.
AlgebraElement det_cayley_expansion(const AlgMatrix& m, const DetOptions& opt = {});

// Permanent of a scalar matrix by subset inclusion-exclusion in Gray-code
// order. The AlgMatrix overload requires a 1-dimensional algebra.
FieldValue per_ryser(const FMatrix& m, const Guards& g = {});
AlgebraElement per_ryser(const AlgMatrix& m, const Guards& g = {});

// Division-free determinant over any commutative algebra: dynamic program
// over closed-walk sequences, O(n^4) algebra multiplications.
AlgebraElement det_commutative(const AlgMatrix& m);

// Determinant over the upper-triangular matrix algebra: one scalar
// determinant per nondecreasing index sequence, accumulated per entry
// position of the result.
AlgebraElement det_upper_triangular(const AlgMatrix& m);

// Determinant over any algebra whose semisimple part is commutative, via the
// radical-splitting of every entry and one commutative determinant per
// (row subset, injective column map) pair with |S| < d.
AlgebraElement det_general(const AlgMatrix& m, const WMDecomposition& w,
                           DetStats* stats = nullptr);

struct DetOutcome {
  DichotomyReport report;
  std::optional<AlgebraElement> value;
  std::string algorithm;  // which algorithm produced value, when set
};

// Classify the algebra, then either dispatch to the cheapest exact algorithm
// (easy) or report hardness (optionally still computing the exponential
// oracle when forced and within guard).
DetOutcome det_auto(const AlgMatrix& m, const DetOptions& opt = {});

}  // namespace algdet
