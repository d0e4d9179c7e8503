#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "algdet/linalg.hpp"
#include "doctest.h"

using namespace algdet;

namespace {

FMatrix from_ints(const FieldSpec& s, std::size_t r, std::size_t c,
                  std::initializer_list<long long> v) {
  FMatrix m = FMatrix::zero(s, r, c);
  std::size_t idx = 0;
  for (long long x : v) m.a[idx++] = FieldValue::of_int(s, x);
  REQUIRE(idx == r * c);
  return m;
}

FMatrix random_matrix(const FieldSpec& s, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  FMatrix m = FMatrix::zero(s, r, c);
  for (auto& x : m.a) {
    if (s.kind == FieldKind::prime)
      x = FieldValue::of_int(s, (long long)(rng() % s.p));
    else
      x = FieldValue::of_rational(Rational((long long)(rng() % 9) - 4, 1 + (long long)(rng() % 4)));
  }
  return m;
}

}  // namespace

TEST_CASE("matrix multiplication on hand values") {
  FieldSpec s = FieldSpec::gf(7);
  FMatrix x = from_ints(s, 2, 2, {1, 2, 3, 4});
  FMatrix y = from_ints(s, 2, 2, {5, 6, 0, 1});
  CHECK(mat_mul(x, y) == from_ints(s, 2, 2, {5, 1, 1, 1}));
  CHECK(mat_mul(x, FMatrix::identity(s, 2)) == x);
  CHECK(mat_vec(x, {FieldValue::of_int(s, 1), FieldValue::of_int(s, 1)}) ==
        std::vector<FieldValue>{FieldValue::of_int(s, 3), FieldValue::of_int(s, 0)});
}

TEST_CASE("rref is canonical for the row space") {
  FieldSpec s = FieldSpec::gf(7);
  FMatrix a = from_ints(s, 2, 3, {1, 2, 3, 4, 5, 6});
  // Same row space, different generators: swapped and rescaled rows.
  FMatrix b = from_ints(s, 3, 3, {4, 5, 6, 2, 4, 6, 5, 0, 2});
  std::vector<std::size_t> pa, pb;
  FMatrix ra = rref(a, &pa);
  FMatrix rb = rref(b, &pb);
  CHECK(ra == rb);
  CHECK(pa == pb);
  CHECK(ra.rows == 2);
  CHECK(pa == std::vector<std::size_t>{0, 1});
  // Leading ones, zeros above pivots.
  CHECK(ra.at(0, 0) == FieldValue::one(s));
  CHECK(ra.at(1, 1) == FieldValue::one(s));
  CHECK(ra.at(0, 1) == FieldValue::zero(s));
}

TEST_CASE("kernel basis spans the right kernel") {
  FieldSpec s = FieldSpec::gf(5);
  FMatrix m = from_ints(s, 2, 4, {1, 2, 3, 4, 0, 1, 1, 0});
  FMatrix k = kernel_basis(m);
  CHECK(k.rows == 2);  // rank 2, 4 columns
  for (std::size_t i = 0; i < k.rows; ++i) {
    std::vector<FieldValue> v(k.cols, FieldValue::zero(s));
    for (std::size_t j = 0; j < k.cols; ++j) v[j] = k.at(i, j);
    for (const FieldValue& c : mat_vec(m, v)) CHECK(c == FieldValue::zero(s));
  }
  CHECK(kernel_basis(FMatrix::identity(s, 3)).rows == 0);
}

TEST_CASE("reduce_against produces the canonical coset representative") {
  FieldSpec s = FieldSpec::gf(7);
  std::vector<std::size_t> piv;
  FMatrix r = rref(from_ints(s, 1, 3, {1, 2, 3}), &piv);
  auto red = reduce_against(r, piv, {FieldValue::of_int(s, 2), FieldValue::of_int(s, 0),
                                     FieldValue::of_int(s, 1)});
  CHECK(red[0] == FieldValue::zero(s));  // pivot coordinate cleared
  CHECK(red[1] == FieldValue::of_int(s, 3));
  CHECK(red[2] == FieldValue::of_int(s, 2));
  // Reducing a row-space member yields zero.
  auto z = reduce_against(r, piv, {FieldValue::of_int(s, 3), FieldValue::of_int(s, 6),
                                   FieldValue::of_int(s, 2)});
  for (const FieldValue& c : z) CHECK(c == FieldValue::zero(s));
}

TEST_CASE("scalar determinant on hand values") {
  FieldSpec s = FieldSpec::gf(7);
  CHECK(det_scalar(from_ints(s, 2, 2, {1, 2, 3, 4})) == FieldValue::of_int(s, 5));
  CHECK(det_scalar(FMatrix::identity(s, 4)) == FieldValue::one(s));
  CHECK(det_scalar(from_ints(s, 3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == FieldValue::zero(s));
  FieldSpec q = FieldSpec::qq();
  FMatrix m = FMatrix::zero(q, 2, 2);
  m.at(0, 0) = FieldValue::of_rational(Rational(1, 2));
  m.at(0, 1) = FieldValue::of_rational(Rational(1, 3));
  m.at(1, 0) = FieldValue::of_rational(Rational(1, 4));
  m.at(1, 1) = FieldValue::of_rational(Rational(1, 5));
  CHECK(det_scalar(m) == FieldValue::of_rational(Rational(1, 60)));
}

TEST_CASE("determinant is multiplicative on random matrices") {
  std::mt19937_64 rng(721);
  for (const FieldSpec& s : {FieldSpec::gf(7), FieldSpec::qq()}) {
    for (int trial = 0; trial < 50; ++trial) {
      FMatrix a = random_matrix(s, 4, 4, rng);
      FMatrix b = random_matrix(s, 4, 4, rng);
      CHECK(det_scalar(mat_mul(a, b)) == det_scalar(a) * det_scalar(b));
    }
  }
}

TEST_CASE("inverse and solve") {
  FieldSpec s = FieldSpec::gf(7);
  FMatrix a = from_ints(s, 2, 2, {1, 2, 3, 4});
  auto ainv = inverse(a);
  REQUIRE(ainv.has_value());
  CHECK(mat_mul(a, *ainv) == FMatrix::identity(s, 2));
  CHECK(mat_mul(*ainv, a) == FMatrix::identity(s, 2));
  CHECK(!inverse(from_ints(s, 2, 2, {1, 2, 2, 4})).has_value());

  std::vector<FieldValue> b{FieldValue::of_int(s, 1), FieldValue::of_int(s, 0)};
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(mat_vec(a, *x) == b);
  // Underdetermined: a particular solution still satisfies the system.
  FMatrix wide = from_ints(s, 1, 3, {1, 1, 1});
  auto xw = solve(wide, {FieldValue::of_int(s, 4)});
  REQUIRE(xw.has_value());
  CHECK(mat_vec(wide, *xw) == std::vector<FieldValue>{FieldValue::of_int(s, 4)});
  // Inconsistent system has no solution.
  FMatrix sing = from_ints(s, 2, 2, {1, 1, 1, 1});
  CHECK(!solve(sing, {FieldValue::of_int(s, 0), FieldValue::of_int(s, 1)}).has_value());
}

TEST_CASE("shape mismatches are rejected") {
  FieldSpec s = FieldSpec::gf(7);
  FMatrix a = FMatrix::zero(s, 2, 3);
  FMatrix b = FMatrix::zero(s, 2, 2);
  CHECK_THROWS_AS((void)mat_mul(a, b), Error);
  CHECK_THROWS_AS((void)det_scalar(a), Error);
  FMatrix c = FMatrix::zero(FieldSpec::gf(5), 3, 2);
  CHECK_THROWS_AS((void)mat_mul(a, c), Error);
}
