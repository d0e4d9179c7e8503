#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "algdet/algebra.hpp"
#include "doctest.h"

using namespace algdet;

namespace {

const FieldSpec g7 = FieldSpec::gf(7);
const FieldSpec g5 = FieldSpec::gf(5);

AlgebraElement random_element(const AlgebraPtr& a, std::mt19937_64& rng) {
  std::vector<FieldValue> c(a->dim());
  for (auto& x : c) {
    if (a->field().kind == FieldKind::prime)
      x = FieldValue::of_int(a->field(), (long long)(rng() % a->field().p));
    else
      x = FieldValue::of_rational(Rational((long long)(rng() % 9) - 4, 1));
  }
  return {a, std::move(c)};
}

// Coordinates of the d x d matrix unit E_pq (1-based) in matrix_algebra(d).
AlgebraElement mat_unit(const AlgebraPtr& m2, int d, int p, int q) {
  std::vector<FieldValue> c(m2->dim(), FieldValue::zero(m2->field()));
  c[(std::size_t)(p - 1) * d + (q - 1)] = FieldValue::one(m2->field());
  return {m2, std::move(c)};
}

}  // namespace

TEST_CASE("matrix algebra multiplication matches literal matrix products") {
  AlgebraPtr m2 = matrix_algebra(g7, 2);
  CHECK(m2->dim() == 4);
  CHECK(m2->label(0) == "E11");
  CHECK(m2->label(1) == "E12");
  CHECK(m2->label(2) == "E21");
  CHECK(m2->label(3) == "E22");

  // X = E11 - E22, Y = -E12 - E21, Z = -E12 + E21: X*Y = Z.
  AlgebraElement X = mat_unit(m2, 2, 1, 1) - mat_unit(m2, 2, 2, 2);
  AlgebraElement Y = -mat_unit(m2, 2, 1, 2) - mat_unit(m2, 2, 2, 1);
  AlgebraElement Z = -mat_unit(m2, 2, 1, 2) + mat_unit(m2, 2, 2, 1);
  CHECK(X * Y == Z);

  // Products agree with literal d x d matrix multiplication on random pairs.
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraElement x = random_element(m2, rng), y = random_element(m2, rng);
    AlgebraElement p = x * y;
    FMatrix mx = FMatrix::zero(g7, 2, 2), my = FMatrix::zero(g7, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        mx.at(i, j) = x.coord(i * 2 + j);
        my.at(i, j) = y.coord(i * 2 + j);
      }
    FMatrix mp = mat_mul(mx, my);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(p.coord(i * 2 + j) == mp.at(i, j));
  }

  CHECK(!m2->commutative());
  auto [wi, wj] = m2->noncommuting_pair();
  CHECK(m2->label(wi) == "E12");
  CHECK(m2->label(wj) == "E21");
}

TEST_CASE("upper triangular algebra") {
  AlgebraPtr u2 = upper_triangular(g5, 2);
  CHECK(u2->dim() == 3);
  CHECK(u2->labels() == std::vector<std::string>{"E11", "E12", "E22"});
  const std::size_t i11 = upper_triangular_index(2, 1, 1);
  const std::size_t i12 = upper_triangular_index(2, 1, 2);
  const std::size_t i22 = upper_triangular_index(2, 2, 2);
  AlgebraElement e11 = basis_element(u2, i11);
  AlgebraElement e12 = basis_element(u2, i12);
  AlgebraElement e22 = basis_element(u2, i22);
  CHECK(e11 * e12 == e12);
  CHECK(e12 * e11 == zero_element(u2));
  CHECK(e12 * e22 == e12);
  CHECK(e12 * e12 == zero_element(u2));
  CHECK(unit_element(u2) == e11 + e22);
  CHECK(!u2->commutative());
  CHECK(u2->provenance().tag == Provenance::Tag::upper_triangular);
  CHECK(u2->provenance().d == 2);
}

TEST_CASE("diagonal algebra is pointwise and commutative") {
  AlgebraPtr d3 = diagonal(g7, 3);
  CHECK(d3->dim() == 3);
  CHECK(d3->commutative());
  CHECK(d3->pointwise());
  AlgebraElement a = basis_element(d3, 0), b = basis_element(d3, 1);
  CHECK(a * a == a);
  CHECK(a * b == zero_element(d3));
}

TEST_CASE("direct sum multiplies componentwise") {
  AlgebraPtr s = direct_sum(diagonal(g7, 2), matrix_algebra(g7, 2));
  CHECK(s->dim() == 6);
  CHECK(!s->commutative());
  AlgebraElement left = basis_element(s, 0);
  AlgebraElement right = basis_element(s, 2);  // E11 of the matrix summand
  CHECK(left * right == zero_element(s));
  CHECK(unit_element(s) * right == right);
  CHECK(s->provenance().tag == Provenance::Tag::direct_sum);
  CHECK(direct_sum(diagonal(g7, 2), diagonal(g7, 3))->commutative());
}

TEST_CASE("tensor product and tensor power") {
  AlgebraPtr u2 = upper_triangular(g7, 2);
  AlgebraPtr t2 = tensor_power(u2, 2);
  CHECK(t2->dim() == 9);
  CHECK(unit_element(t2).coords() == [&] {
    // 1 (x) 1: outer product of the unit coordinates, row-major.
    std::vector<FieldValue> c(9, FieldValue::zero(g7));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        c[i * 3 + j] = u2->unit_coords()[i] * u2->unit_coords()[j];
    return c;
  }());
  CHECK(tensor_power(u2, 1) == u2);  // power 1 is the algebra itself

  // (a (x) b)(c (x) d) = ac (x) bd on basis tensors.
  AlgebraPtr d2 = diagonal(g7, 2);
  AlgebraPtr t = tensor_product(d2, u2);
  CHECK(t->dim() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 3; ++l) {
          AlgebraElement lhs =
              basis_element(t, i * 3 + j) * basis_element(t, k * 3 + l);
          AlgebraElement ac = basis_element(d2, i) * basis_element(d2, k);
          AlgebraElement bd = basis_element(u2, j) * basis_element(u2, l);
          std::vector<FieldValue> exp(6, FieldValue::zero(g7));
          for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 3; ++y) exp[x * 3 + y] = ac.coord(x) * bd.coord(y);
          CHECK(lhs.coords() == exp);
        }
}

TEST_CASE("quotient by an ideal") {
  AlgebraPtr u2 = upper_triangular(g7, 2);
  FMatrix rows = FMatrix::zero(g7, 1, 3);
  rows.at(0, upper_triangular_index(2, 1, 2)) = FieldValue::one(g7);
  Subspace ideal = Subspace::span(u2, rows);
  AlgebraPtr q = quotient(u2, ideal);
  CHECK(q->dim() == 2);
  CHECK(q->commutative());
  CHECK(q->provenance().tag == Provenance::Tag::quotient);

  // A non-ideal subspace is rejected: span{E11} is not an ideal of U_2.
  FMatrix bad = FMatrix::zero(g7, 1, 3);
  bad.at(0, upper_triangular_index(2, 1, 1)) = FieldValue::one(g7);
  CHECK_THROWS_AS((void)quotient(u2, Subspace::span(u2, bad)), Error);
}

TEST_CASE("phi embeddings into tensor powers") {
  AlgebraPtr u2 = upper_triangular(g7, 2);

  // t = 0: the target is B itself and phi_0 is the identity.
  PhiEmbed id = phi_embed(u2, tensor_power(u2, 1), 0, 0);
  AlgebraElement e12 = basis_element(u2, upper_triangular_index(2, 1, 2));
  CHECK(id(e12) == e12);

  // t = 2, slot 1: phi_1(b) = 1 (x) b (x) 1.
  AlgebraPtr t3 = tensor_power(u2, 3);
  PhiEmbed phi1 = phi_embed(u2, t3, 2, 1);
  AlgebraElement img = phi1(e12);
  std::vector<FieldValue> exp(27, FieldValue::zero(g7));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        exp[(i * 3 + j) * 3 + k] =
            u2->unit_coords()[i] * e12.coord(j) * u2->unit_coords()[k];
  CHECK(img.coords() == exp);

  // Unit goes to unit; the map is linear and multiplicative.
  CHECK(phi1(unit_element(u2)) == unit_element(t3));
  std::mt19937_64 rng(99);
  PhiEmbed phi0 = phi_embed(u2, t3, 2, 0);
  PhiEmbed phi2 = phi_embed(u2, t3, 2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    AlgebraElement x = random_element(u2, rng), y = random_element(u2, rng);
    CHECK(phi1(x * y) == phi1(x) * phi1(y));
    CHECK(phi1(x + y) == phi1(x) + phi1(y));
    // Distinct slots commute even though B does not.
    CHECK(phi0(x) * phi2(y) == phi2(y) * phi0(x));
    CHECK(phi0(x) * phi1(y) == phi1(y) * phi0(x));
  }

  // In a commutative B the images of different slots commute trivially too.
  AlgebraPtr d2 = diagonal(g7, 2);
  AlgebraPtr dt = tensor_power(d2, 2);
  PhiEmbed a0 = phi_embed(d2, dt, 1, 0), a1 = phi_embed(d2, dt, 1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement x = random_element(d2, rng), y = random_element(d2, rng);
    CHECK(a0(x) * a1(y) == a1(y) * a0(x));
  }
}

TEST_CASE("regular representation") {
  AlgebraPtr u2 = upper_triangular(g7, 2);
  CHECK(regular_representation(unit_element(u2)) == FMatrix::identity(g7, 3));

  // L_{E12}: kills E11 and E12, maps E22 to E12.
  AlgebraElement e12 = basis_element(u2, upper_triangular_index(2, 1, 2));
  FMatrix l = regular_representation(e12);
  const std::size_t i11 = upper_triangular_index(2, 1, 1);
  const std::size_t i12 = upper_triangular_index(2, 1, 2);
  const std::size_t i22 = upper_triangular_index(2, 2, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(l.at(r, i11) == FieldValue::zero(g7));
    CHECK(l.at(r, i12) == FieldValue::zero(g7));
    CHECK(l.at(r, i22) == (r == i12 ? FieldValue::one(g7) : FieldValue::zero(g7)));
  }

  // Linearity: L_{x+y} = L_x + L_y entrywise.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement x = random_element(u2, rng), y = random_element(u2, rng);
    FMatrix lx = regular_representation(x), ly = regular_representation(y);
    FMatrix lsum = regular_representation(x + y);
    for (std::size_t i = 0; i < 9; ++i) CHECK(lsum.a[i] == lx.a[i] + ly.a[i]);
    // And L is multiplicative: L_{xy} = L_x L_y.
    CHECK(regular_representation(x * y) == mat_mul(lx, ly));
  }
}

TEST_CASE("subspace products") {
  AlgebraPtr u2 = upper_triangular(g7, 2);
  FMatrix r12 = FMatrix::zero(g7, 1, 3);
  r12.at(0, upper_triangular_index(2, 1, 2)) = FieldValue::one(g7);
  Subspace s12 = Subspace::span(u2, r12);
  CHECK(subspace_product(s12, s12).is_zero());

  AlgebraPtr u3 = upper_triangular(g7, 3);
  Subspace strict = strictly_upper(g7, 3);
  CHECK(strict.dim() == 3);
  Subspace sq = subspace_product(strict, strict);
  CHECK(sq.dim() == 1);
  CHECK(sq.contains(basis_element(u3, upper_triangular_index(3, 1, 3))));
  CHECK(subspace_product(sq, strict).is_zero());

  // Monotone and associative on random subspaces of U_4.
  AlgebraPtr u4 = upper_triangular(g7, 4);
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 10; ++trial) {
    FMatrix ra = FMatrix::zero(g7, 2, u4->dim()), rb = FMatrix::zero(g7, 2, u4->dim()),
            rc = FMatrix::zero(g7, 2, u4->dim());
    for (auto* m : {&ra, &rb, &rc})
      for (auto& x : m->a) x = FieldValue::of_int(g7, (long long)(rng() % 7));
    Subspace a = Subspace::span(u4, ra), b = Subspace::span(u4, rb), c = Subspace::span(u4, rc);
    Subspace ab = subspace_product(a, b);
    Subspace bigger = subspace_product(subspace_sum(a, c), b);
    // Monotonicity: a (subset) a+c implies a*b (subset) (a+c)*b.
    for (std::size_t i = 0; i < ab.dim(); ++i) CHECK(bigger.contains(ab.basis_element(i)));
    // Associativity of span products.
    CHECK(subspace_product(subspace_product(a, b), c) ==
          subspace_product(a, subspace_product(b, c)));
  }
}

TEST_CASE("construction validates the unit and associativity") {
  // a1*a1 = a2, every other product zero: associative but no unit exists.
  FieldSpec s = g7;
  std::vector<FieldValue> table(8, FieldValue::zero(s));
  table[(0 * 2 + 0) * 2 + 1] = FieldValue::one(s);  // a1*a1 = a2
  std::vector<FieldValue> unit{FieldValue::one(s), FieldValue::zero(s)};
  try {
    (void)Algebra::make(s, {"a1", "a2"}, table, unit);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unit);
  }

  // x*x = y, y*x = x, x*y = 0 violates associativity: (xx)x = x but x(xx) = 0.
  std::vector<FieldValue> t3(27, FieldValue::zero(s));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
    t3[(i * 3 + j) * 3 + k] = FieldValue::one(s);
  };
  set(0, 0, 0);  // 1*1 = 1
  set(0, 1, 1);  // 1*x = x
  set(1, 0, 1);  // x*1 = x
  set(0, 2, 2);  // 1*y = y
  set(2, 0, 2);  // y*1 = y
  set(1, 1, 2);  // x*x = y
  set(2, 1, 1);  // y*x = x  (x*y = 0)
  std::vector<FieldValue> u3{FieldValue::one(s), FieldValue::zero(s), FieldValue::zero(s)};
  try {
    (void)Algebra::make(s, {"1", "x", "y"}, t3, u3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::associativity);
  }
}

TEST_CASE("change of basis preserves structure") {
  AlgebraPtr u2 = upper_triangular(g7, 2);
  FMatrix t = FMatrix::zero(g7, 3, 3);
  // Invertible with a mix of entries.
  long long vals[9] = {1, 1, 0, 0, 1, 0, 2, 0, 1};
  for (std::size_t i = 0; i < 9; ++i) t.a[i] = FieldValue::of_int(g7, vals[i]);
  REQUIRE(inverse(t).has_value());
  AlgebraPtr conj = change_of_basis(u2, t);
  CHECK(conj->dim() == 3);
  CHECK(conj->commutative() == u2->commutative());
  CHECK(conj->provenance().tag == Provenance::Tag::generic);

  // Multiplication transported through T agrees with the original algebra:
  // coords(x*y in conj) = T^{-1} * (T x * T y in u2).
  std::mt19937_64 rng(86);
  FMatrix tinv = *inverse(t);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebraElement x = random_element(conj, rng), y = random_element(conj, rng);
    AlgebraElement inside{u2, mat_vec(t, x.coords())};
    AlgebraElement inside2{u2, mat_vec(t, y.coords())};
    CHECK((x * y).coords() == mat_vec(tinv, (inside * inside2).coords()));
  }
}

TEST_CASE("element and subspace bookkeeping") {
  AlgebraPtr d2 = diagonal(g7, 2);
  CHECK(element_from_int(d2, 3) == unit_element(d2).scaled(FieldValue::of_int(g7, 3)));
  CHECK(zero_element(d2).is_zero());
  CHECK(full_subspace(d2).dim() == 2);
  AlgebraElement x = basis_element(d2, 0);
  CHECK_THROWS_AS((void)(x + basis_element(diagonal(g7, 3), 0)), Error);
  CHECK(d2->same_as(*diagonal(g7, 2)));
  CHECK(!d2->same_as(*diagonal(g5, 2)));
  CHECK(!d2->same_as(*upper_triangular(g7, 2)));
}
