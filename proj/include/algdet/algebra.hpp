#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "algdet/linalg.hpp"

namespace algdet {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Construction provenance. Lets later stages use closed-form structure facts
// (e.g. the radical of an upper-triangular algebra) instead of the generic
// characteristic-limited computation.
struct Provenance {
  enum class Tag {
    generic,
    field,
    matrix,
    upper_triangular,
    diagonal,
    direct_sum,
    tensor,
    quotient,
  };
  Tag tag = Tag::generic;
  int d = 0;  // size parameter for matrix / upper_triangular / diagonal
  AlgebraPtr left, right;  // operands for direct_sum / tensor
};

// Finite-dimensional associative unital algebra over an exact field, given by
// dense structure constants: basis a_0..a_{D-1}, a_i * a_j = sum_k c_ijk a_k.
// Construction validates associativity on all basis triples and the two-sided
// unit law, so a successfully built Algebra is trusted downstream.
class Algebra {
 public:
  static AlgebraPtr make(FieldSpec spec, std::vector<std::string> labels,
                         std::vector<FieldValue> table, std::vector<FieldValue> unit,
                         Provenance prov = {});

  const FieldSpec& field() const { return spec_; }
  std::size_t dim() const { return dim_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<FieldValue>& unit_coords() const { return unit_; }
  const Provenance& provenance() const { return prov_; }

  const FieldValue& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[(i * dim_ + j) * dim_ + k];
  }
  // Nonzero structure coefficients of a_i * a_j, as (k, c_ijk) pairs.
  const std::vector<std::pair<std::uint32_t, FieldValue>>& product_support(std::size_t i,
                                                                           std::size_t j) const {
    return sparse_[i * dim_ + j];
  }

  bool commutative() const { return commutative_; }
  std::pair<std::size_t, std::size_t> noncommuting_pair() const { return witness_; }
  // true when a_i a_j = [i==j] a_i, i.e. multiplication is coordinatewise
  bool pointwise() const { return pointwise_; }

  std::uint64_t content_hash() const { return hash_; }
  bool same_as(const Algebra& o) const;

 private:
  Algebra() = default;

  FieldSpec spec_{};
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<FieldValue> table_;  // D^3, (i*D+j)*D+k
  std::vector<FieldValue> unit_;
  std::vector<std::vector<std::pair<std::uint32_t, FieldValue>>> sparse_;
  Provenance prov_{};
  bool commutative_ = true;
  std::pair<std::size_t, std::size_t> witness_{0, 0};
  bool pointwise_ = false;
  std::uint64_t hash_ = 0;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr alg, std::vector<FieldValue> coords);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::vector<FieldValue>& coords() const { return c_; }
  const FieldValue& coord(std::size_t i) const { return c_[i]; }
  void set_coord(std::size_t i, FieldValue v) { c_[i] = std::move(v); }

  bool is_zero() const;
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;  // algebra product
  AlgebraElement operator-() const;
  AlgebraElement scaled(const FieldValue& s) const;
  AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
  AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }
  bool operator==(const AlgebraElement& o) const;
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  std::string str() const;  // e.g. "2*E11 + 5*E12"

 private:
  void check_same(const AlgebraElement& o) const;
  AlgebraPtr alg_;
  std::vector<FieldValue> c_;
};

AlgebraElement zero_element(const AlgebraPtr& a);
AlgebraElement unit_element(const AlgebraPtr& a);
AlgebraElement basis_element(const AlgebraPtr& a, std::size_t i);
AlgebraElement element_from_int(const AlgebraPtr& a, long long v);  // v * unit

// Left regular representation of x: D x D scalar matrix with column j equal
// to the coordinates of x * a_j.
FMatrix regular_representation(const AlgebraElement& x);

// Linear subspace of an algebra, stored as canonical RREF rows.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(AlgebraPtr alg, const FMatrix& vectors);
  static Subspace zero(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t dim() const { return rows_.rows; }
  bool is_zero() const { return rows_.rows == 0; }
  const FMatrix& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivots_; }
  AlgebraElement basis_element(std::size_t i) const;

  bool contains(const AlgebraElement& x) const;
  // coordinates of x in this subspace's basis; fails if x is outside
  std::vector<FieldValue> coordinates_of(const AlgebraElement& x) const;
  bool operator==(const Subspace& o) const;

 private:
  AlgebraPtr alg_;
  FMatrix rows_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
// span of all pairwise products of basis elements
Subspace subspace_product(const Subspace& u, const Subspace& v);
Subspace full_subspace(const AlgebraPtr& a);

// --- constructor suite ---
AlgebraPtr field_algebra(const FieldSpec& s);
AlgebraPtr matrix_algebra(const FieldSpec& s, int d);
AlgebraPtr upper_triangular(const FieldSpec& s, int d);
AlgebraPtr diagonal(const FieldSpec& s, int d);
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraPtr tensor_power(const AlgebraPtr& b, int k);  // k >= 1
// Quotient by a verified two-sided ideal. Basis: cosets of the non-pivot
// basis vectors of the parent.
AlgebraPtr quotient(const AlgebraPtr& a, const Subspace& ideal);
// The strict-upper span inside upper_triangular(s, d). (Strictly upper
// triangular matrices have no unit, so this is a subspace, not an Algebra.)
Subspace strictly_upper(const FieldSpec& s, int d);

// Basis index of E_pq (1-based p <= q) inside upper_triangular(s, d).
std::size_t upper_triangular_index(int d, int p, int q);

// Rebuild an algebra over a new basis given by the columns of T (invertible).
AlgebraPtr change_of_basis(const AlgebraPtr& a, const FMatrix& t);

// phi_ell : B -> B^{tensor (t+1)}, b |-> 1 x ... x b x ... x 1 with b in
// slot ell. `target` must be tensor_power(b_alg, t + 1).
struct PhiEmbed {
  AlgebraPtr source, target;
  int t = 0, ell = 0;
  AlgebraElement operator()(const AlgebraElement& b) const;
};
PhiEmbed phi_embed(const AlgebraPtr& b_alg, const AlgebraPtr& target, int t, int ell);

// Square matrix over an algebra.
struct AlgMatrix {
  AlgebraPtr alg;
  std::size_t n = 0;
  std::vector<AlgebraElement> e;

  static AlgMatrix zero(const AlgebraPtr& a, std::size_t n);
  static AlgMatrix identity(const AlgebraPtr& a, std::size_t n);
  AlgebraElement& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
  const AlgebraElement& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
};

}  // namespace algdet
