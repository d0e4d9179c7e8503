#include "algdet/linalg.hpp"

namespace algdet {

using boost::multiprecision::cpp_int;

FMatrix FMatrix::zero(const FieldSpec& s, std::size_t r, std::size_t c) {
  FMatrix m;
  m.spec = s;
  m.rows = r;
  m.cols = c;
  m.a.assign(r * c, FieldValue::zero(s));
  return m;
}

FMatrix FMatrix::identity(const FieldSpec& s, std::size_t n) {
  FMatrix m = zero(s, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldValue::one(s);
  return m;
}

bool FMatrix::operator==(const FMatrix& o) const {
  if (!(spec == o.spec) || rows != o.rows || cols != o.cols) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

FMatrix mat_mul(const FMatrix& x, const FMatrix& y) {
  if (!(x.spec == y.spec) || x.cols != y.rows)
    fail(Errc::bad_dimension, "matrix product shape mismatch");
  FMatrix r = FMatrix::zero(x.spec, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const FieldValue& xv = x.at(i, k);
      if (xv.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const FieldValue& yv = y.at(k, j);
        if (!yv.is_zero()) r.at(i, j) += xv * yv;
      }
    }
  return r;
}

std::vector<FieldValue> mat_vec(const FMatrix& m, const std::vector<FieldValue>& v) {
  if (m.cols != v.size()) fail(Errc::bad_dimension, "matrix-vector shape mismatch");
  std::vector<FieldValue> r(m.rows, FieldValue::zero(m.spec));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero() && !v[j].is_zero()) r[i] += m.at(i, j) * v[j];
  return r;
}

FMatrix rref(FMatrix m, std::vector<std::size_t>* pivot_cols) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t sel = r;
    while (sel < m.rows && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    FieldValue piv = m.at(r, c).inv();
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) *= piv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      FieldValue f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;  // drop zero rows
  m.a.resize(r * m.cols, FieldValue::zero(m.spec));
  if (pivot_cols) *pivot_cols = pivots;
  return m;
}

FMatrix kernel_basis(const FMatrix& m) {
  std::vector<std::size_t> pivots;
  FMatrix e = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  FMatrix out = FMatrix::zero(m.spec, 0, m.cols);
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<FieldValue> v(m.cols, FieldValue::zero(m.spec));
    v[f] = FieldValue::one(m.spec);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e.at(r, f);
    out.a.insert(out.a.end(), v.begin(), v.end());
    ++out.rows;
  }
  return rref(out);
}

std::vector<FieldValue> reduce_against(const FMatrix& rref_rows,
                                       const std::vector<std::size_t>& pivot_cols,
                                       std::vector<FieldValue> v) {
  for (std::size_t r = 0; r < rref_rows.rows; ++r) {
    const FieldValue& c = v[pivot_cols[r]];
    if (c.is_zero()) continue;
    FieldValue f = c;
    for (std::size_t j = 0; j < rref_rows.cols; ++j)
      if (!rref_rows.at(r, j).is_zero()) v[j] -= f * rref_rows.at(r, j);
  }
  return v;
}

namespace {

FieldValue det_gauss(FMatrix m) {
  const FieldSpec& s = m.spec;
  FieldValue det = FieldValue::one(s);
  for (std::size_t c = 0; c < m.cols; ++c) {
    std::size_t sel = c;
    while (sel < m.rows && m.at(sel, c).is_zero()) ++sel;
    if (sel == m.rows) return FieldValue::zero(s);
    if (sel != c) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    FieldValue piv = m.at(c, c).inv();
    for (std::size_t i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c).is_zero()) continue;
      FieldValue f = m.at(i, c) * piv;
      for (std::size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

FieldValue det_bareiss(const FMatrix& m) {
  // Clear denominators per row (permanent of the scaling is tracked as a
  // product of row factors), then run the fraction-free recurrence on
  // arbitrary-precision integers.
  const std::size_t n = m.rows;
  std::vector<cpp_int> w(n * n);
  Rational scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cpp_int l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, denominator(m.at(i, j).rational()));
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = m.at(i, j).rational();
      w[i * n + j] = numerator(q) * (l / denominator(q));
    }
  }
  cpp_int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t sel = k;
    while (sel < n && w[sel * n + k] == 0) ++sel;
    if (sel == n) return FieldValue::of_rational(0);
    if (sel != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w[sel * n + j], w[k * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        cpp_int t = w[i * n + j] * w[k * n + k] - w[i * n + k] * w[k * n + j];
        w[i * n + j] = t / prev;  // exact by the Bareiss identity
      }
    prev = w[k * n + k];
  }
  Rational d(w[n * n - 1], 1);
  d /= scale;
  if (sign < 0) d = -d;
  return FieldValue::of_rational(d);
}

}  // namespace

FieldValue det_scalar(const FMatrix& m) {
  if (m.rows != m.cols) fail(Errc::bad_dimension, "determinant of a non-square matrix");
  if (m.rows == 0) return FieldValue::one(m.spec);
  return m.spec.kind == FieldKind::prime ? det_gauss(m) : det_bareiss(m);
}

std::optional<FMatrix> inverse(const FMatrix& m) {
  if (m.rows != m.cols) fail(Errc::bad_dimension, "inverse of a non-square matrix");
  const std::size_t n = m.rows;
  FMatrix aug = FMatrix::zero(m.spec, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = FieldValue::one(m.spec);
  }
  std::vector<std::size_t> pivots;
  FMatrix e = rref(std::move(aug), &pivots);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  FMatrix inv = FMatrix::zero(m.spec, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.at(i, n + j);
  return inv;
}

std::optional<std::vector<FieldValue>> solve(const FMatrix& A, const std::vector<FieldValue>& b) {
  if (A.rows != b.size()) fail(Errc::bad_dimension, "solve shape mismatch");
  FMatrix aug = FMatrix::zero(A.spec, A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  std::vector<std::size_t> pivots;
  FMatrix e = rref(std::move(aug), &pivots);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;  // 0 = 1 row
  std::vector<FieldValue> x(A.cols, FieldValue::zero(A.spec));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = e.at(r, A.cols);
  return x;
}

}  // namespace algdet
