#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "algdet/structure.hpp"
#include "doctest.h"

using namespace algdet;

namespace {

const FieldSpec g7 = FieldSpec::gf(7);
const FieldSpec g5 = FieldSpec::gf(5);

FMatrix random_invertible(const FieldSpec& s, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    FMatrix t = FMatrix::zero(s, n, n);
    for (auto& x : t.a) x = FieldValue::of_int(s, (long long)(rng() % s.p));
    if (inverse(t).has_value()) return t;
  }
}

// A structurally identical copy with the constructor provenance erased, so
// the radical must go through the generic trace-form path.
AlgebraPtr generic_copy(const AlgebraPtr& a) {
  return change_of_basis(a, FMatrix::identity(a->field(), a->dim()));
}

void check_wm_postconditions(const WMDecomposition& w) {
  const AlgebraPtr& a = w.alg;
  CHECK(w.b_basis.dim() + w.r_basis.dim() == a->dim());
  CHECK(w.b_basis.contains(unit_element(a)));
  // B is closed under multiplication.
  for (std::size_t i = 0; i < w.b_basis.dim(); ++i)
    for (std::size_t j = 0; j < w.b_basis.dim(); ++j)
      CHECK(w.b_basis.contains(w.b_basis.basis_element(i) * w.b_basis.basis_element(j)));
  // The split projections reassemble every basis vector.
  for (std::size_t i = 0; i < a->dim(); ++i) {
    AlgebraElement x = basis_element(a, i);
    CHECK(w.project_b(x) + w.project_r(x) == x);
    CHECK(w.b_basis.contains(w.project_b(x)));
    CHECK(w.r_basis.contains(w.project_r(x)));
  }
  // B as an algebra matches the commutativity of A/R.
  CHECK(w.b_algebra->commutative() == w.quot->commutative());
  CHECK(w.d == nilpotency_index(a, w.r_basis));
}

}  // namespace

TEST_CASE("radical of constructed algebras") {
  for (int d : {2, 3, 4}) {
    AlgebraPtr u = upper_triangular(g5, d);
    Subspace r = radical(u);
    CHECK(r == strictly_upper(g5, d));
    CHECK(nilpotency_index(u, r) == d);
  }
  CHECK(radical(matrix_algebra(g7, 2)).is_zero());
  CHECK(radical(diagonal(g7, 3)).is_zero());
  CHECK(nilpotency_index(matrix_algebra(g7, 2), radical(matrix_algebra(g7, 2))) == 1);
}

TEST_CASE("radical of direct sums is the sum of radicals") {
  AlgebraPtr a = upper_triangular(g7, 2);
  AlgebraPtr b = upper_triangular(g7, 3);
  AlgebraPtr s = direct_sum(a, b);
  Subspace r = radical(s);
  CHECK(r.dim() == radical(a).dim() + radical(b).dim());
  // Embedded copies of each component radical lie inside radical(s).
  Subspace ra = radical(a);
  for (std::size_t i = 0; i < ra.dim(); ++i) {
    std::vector<FieldValue> c(s->dim(), FieldValue::zero(g7));
    for (std::size_t j = 0; j < a->dim(); ++j) c[j] = ra.basis_element(i).coord(j);
    CHECK(r.contains({s, c}));
  }
  Subspace rb = radical(b);
  for (std::size_t i = 0; i < rb.dim(); ++i) {
    std::vector<FieldValue> c(s->dim(), FieldValue::zero(g7));
    for (std::size_t j = 0; j < b->dim(); ++j) c[a->dim() + j] = rb.basis_element(i).coord(j);
    CHECK(r.contains({s, c}));
  }
  CHECK(nilpotency_index(s, r) == 3);  // max of the component indices
}

TEST_CASE("generic trace-form radical agrees with the analytic answers") {
  // The generic copy is a distinct algebra handle over the same coordinates,
  // so agreement means equal canonical row matrices.
  for (int d : {2, 3}) {
    AlgebraPtr u = upper_triangular(g7, d);
    CHECK(radical(generic_copy(u)).rows() == radical(u).rows());
  }
  CHECK(radical(generic_copy(matrix_algebra(g7, 2))).is_zero());
  CHECK(radical(generic_copy(diagonal(g7, 3))).is_zero());
  CHECK(radical(generic_copy(direct_sum(diagonal(g7, 2), upper_triangular(g7, 2)))).rows() ==
        radical(direct_sum(diagonal(g7, 2), upper_triangular(g7, 2))).rows());
  // Over the rationals the trace form works for any dimension.
  FieldSpec q = FieldSpec::qq();
  CHECK(radical(generic_copy(upper_triangular(q, 3))).rows() ==
        radical(upper_triangular(q, 3)).rows());
}

TEST_CASE("generic radical refuses small characteristic and accepts an override") {
  // dim U_2 = 3 and p = 2 <= 3: the trace form is not valid.
  AlgebraPtr u = generic_copy(upper_triangular(FieldSpec::gf(2), 2));
  try {
    (void)radical(u);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_characteristic);
    CHECK(std::string(e.what()).find("override") != std::string::npos);
  }
  // Supplying the radical by override works and is verified.
  StructureOverride ov;
  FMatrix rows = FMatrix::zero(FieldSpec::gf(2), 1, 3);
  rows.at(0, upper_triangular_index(2, 1, 2)) = FieldValue::one(FieldSpec::gf(2));
  ov.radical_rows = rows;
  CHECK(radical(u, &ov).rows() == strictly_upper(FieldSpec::gf(2), 2).rows());
  // A wrong override (not nilpotent) is rejected rather than trusted.
  StructureOverride bad;
  FMatrix brows = FMatrix::zero(FieldSpec::gf(2), 1, 3);
  brows.at(0, upper_triangular_index(2, 1, 1)) = FieldValue::one(FieldSpec::gf(2));
  bad.radical_rows = brows;
  CHECK_THROWS_AS((void)radical(u, &bad), Error);
}

TEST_CASE("wedderburn-malcev decomposition postconditions") {
  for (int d : {2, 3, 4}) {
    WMDecomposition w = wm_decompose(upper_triangular(g7, d));
    check_wm_postconditions(w);
    CHECK(w.d == d);
    // B is the diagonal span: pointwise-commuting idempotents of dimension d.
    CHECK(w.b_basis.dim() == (std::size_t)d);
    CHECK(w.b_algebra->commutative());
    CHECK(w.r_basis == strictly_upper(g7, d));
  }

  WMDecomposition m = wm_decompose(matrix_algebra(g7, 2));
  check_wm_postconditions(m);
  CHECK(m.b_basis.dim() == 4);
  CHECK(m.r_basis.is_zero());
  CHECK(m.d == 1);

  WMDecomposition s = wm_decompose(direct_sum(diagonal(g5, 2), upper_triangular(g5, 2)));
  check_wm_postconditions(s);
  CHECK(s.b_basis.dim() == 4);  // diag(2) plus the diagonal of U_2
  CHECK(s.r_basis.dim() == 1);
  CHECK(s.d == 2);

  // The generic lifting path satisfies the same postconditions.
  WMDecomposition g = wm_decompose(generic_copy(upper_triangular(g7, 3)));
  check_wm_postconditions(g);
  CHECK(g.d == 3);
}

TEST_CASE("classification verdicts") {
  DichotomyReport hard = classify(matrix_algebra(g7, 2));
  CHECK(!hard.easy);
  CHECK(!hard.quotient_commutative);
  REQUIRE(hard.witness.has_value());
  CHECK(hard.witness->first == "E12");
  CHECK(hard.witness->second == "E21");
  CHECK(!hard.field_caveat.has_value());

  DichotomyReport easy = classify(upper_triangular(g7, 3));
  CHECK(easy.easy);
  CHECK(easy.quotient_commutative);
  CHECK(easy.d == 3);

  DichotomyReport one = classify(field_algebra(g7));
  CHECK(one.easy);
  CHECK(one.d == 1);

  // Hard verdicts over the rationals carry the open-problem caveat.
  DichotomyReport rat = classify(matrix_algebra(FieldSpec::qq(), 2));
  CHECK(!rat.easy);
  REQUIRE(rat.field_caveat.has_value());
  CHECK(rat.field_caveat->find("rationals") != std::string::npos);

  DichotomyReport two = classify(matrix_algebra(FieldSpec::gf(2), 2));
  CHECK(!two.easy);
  REQUIRE(two.field_caveat.has_value());
  CHECK(two.field_caveat->find("characteristic 2") != std::string::npos);
}

TEST_CASE("classification is invariant under basis change") {
  std::mt19937_64 rng(20240518);
  for (const AlgebraPtr& a :
       {matrix_algebra(g7, 2), upper_triangular(g7, 3), diagonal(g7, 3),
        direct_sum(diagonal(g7, 2), upper_triangular(g7, 2))}) {
    DichotomyReport base = classify(a);
    for (int trial = 0; trial < 20; ++trial) {
      AlgebraPtr conj = change_of_basis(a, random_invertible(g7, a->dim(), rng));
      DichotomyReport got = classify(conj);
      CHECK(got.easy == base.easy);
      if (base.easy) CHECK(got.d == base.d);
    }
  }
}

TEST_CASE("quotient of the algebra by its radical is semisimple here") {
  AlgebraPtr u3 = upper_triangular(g7, 3);
  AlgebraPtr q = quotient(u3, radical(u3));
  CHECK(q->dim() == 3);
  CHECK(q->commutative());
  CHECK(radical(generic_copy(q)).is_zero());
}
