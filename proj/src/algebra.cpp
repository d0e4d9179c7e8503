#include "algdet/algebra.hpp"

#include <algorithm>

namespace algdet {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
  return fnv1a(h, s.data(), s.size());
}

}  // namespace

AlgebraPtr Algebra::make(FieldSpec spec, std::vector<std::string> labels,
                         std::vector<FieldValue> table, std::vector<FieldValue> unit,
                         Provenance prov) {
  const std::size_t d = labels.size();
  if (d == 0) fail(Errc::bad_dimension, "algebra dimension must be positive");
  if (table.size() != d * d * d)
    fail(Errc::bad_dimension, "structure table size " + std::to_string(table.size()) +
                                  " differs from D^3 = " + std::to_string(d * d * d));
  if (unit.size() != d) fail(Errc::bad_dimension, "unit coordinate count differs from D");
  for (const auto& v : table)
    if (!(v.spec() == spec)) fail(Errc::spec_mismatch, "structure constant not over " + spec.name());
  for (const auto& v : unit)
    if (!(v.spec() == spec)) fail(Errc::spec_mismatch, "unit coordinate not over " + spec.name());

  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->spec_ = spec;
  alg->dim_ = d;
  alg->labels_ = std::move(labels);
  alg->table_ = std::move(table);
  alg->unit_ = std::move(unit);
  alg->prov_ = std::move(prov);

  alg->sparse_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto& lst = alg->sparse_[i * d + j];
      for (std::size_t k = 0; k < d; ++k) {
        const FieldValue& c = alg->structure(i, j, k);
        if (!c.is_zero()) lst.emplace_back(static_cast<std::uint32_t>(k), c);
      }
    }

  // multiply a coordinate vector by basis element on the right / left
  auto mul_vec_basis = [&](const std::vector<FieldValue>& v, std::size_t j) {
    std::vector<FieldValue> r(d, FieldValue::zero(spec));
    for (std::size_t l = 0; l < d; ++l) {
      if (v[l].is_zero()) continue;
      for (const auto& [k, c] : alg->sparse_[l * d + j]) r[k] += v[l] * c;
    }
    return r;
  };
  auto mul_basis_vec = [&](std::size_t i, const std::vector<FieldValue>& v) {
    std::vector<FieldValue> r(d, FieldValue::zero(spec));
    for (std::size_t l = 0; l < d; ++l) {
      if (v[l].is_zero()) continue;
      for (const auto& [k, c] : alg->sparse_[i * d + l]) r[k] += v[l] * c;
    }
    return r;
  };
  auto table_vec = [&](std::size_t i, std::size_t j) {
    std::vector<FieldValue> r(d, FieldValue::zero(spec));
    for (const auto& [k, c] : alg->sparse_[i * d + j]) r[k] = c;
    return r;
  };

  // associativity on all basis triples
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<FieldValue> ij = table_vec(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<FieldValue> lhs = mul_vec_basis(ij, k);
        std::vector<FieldValue> rhs = mul_basis_vec(i, table_vec(j, k));
        if (lhs != rhs)
          fail(Errc::associativity,
               "associativity fails on basis triple (" + alg->labels_[i] + ", " +
                   alg->labels_[j] + ", " + alg->labels_[k] + ")");
      }
    }

  // unit law on every basis vector
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<FieldValue> ei(d, FieldValue::zero(spec));
    ei[i] = FieldValue::one(spec);
    if (mul_basis_vec(i, alg->unit_) != ei || mul_vec_basis(alg->unit_, i) != ei)
      fail(Errc::unit, "unit law fails on basis vector " + alg->labels_[i]);
  }

  // commutativity flag + witness; prefer a witness pair whose products are
  // both nonzero (more informative than a pair where one side vanishes)
  alg->commutative_ = true;
  bool strong = false, weak = false;
  for (std::size_t i = 0; i < d && !strong; ++i)
    for (std::size_t j = i + 1; j < d && !strong; ++j) {
      bool eq = true;
      for (std::size_t k = 0; k < d; ++k)
        if (alg->structure(i, j, k) != alg->structure(j, i, k)) {
          eq = false;
          break;
        }
      if (eq) continue;
      alg->commutative_ = false;
      if (!weak) {
        weak = true;
        alg->witness_ = {i, j};
      }
      if (!alg->sparse_[i * d + j].empty() && !alg->sparse_[j * d + i].empty()) {
        strong = true;
        alg->witness_ = {i, j};
      }
    }

  // pointwise flag: a_i a_j = [i==j] a_i
  alg->pointwise_ = true;
  for (std::size_t i = 0; i < d && alg->pointwise_; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto& lst = alg->sparse_[i * d + j];
      bool ok = (i == j) ? (lst.size() == 1 && lst[0].first == i && lst[0].second.is_one())
                         : lst.empty();
      if (!ok) {
        alg->pointwise_ = false;
        break;
      }
    }

  std::uint64_t h = 1469598103934665603ull;
  h = hash_string(h, spec.name());
  h = fnv1a(h, &d, sizeof d);
  for (const auto& l : alg->labels_) h = hash_string(h, l);
  for (const auto& v : alg->table_) h = hash_string(h, v.str());
  for (const auto& v : alg->unit_) h = hash_string(h, v.str());
  alg->hash_ = h;
  return alg;
}

bool Algebra::same_as(const Algebra& o) const {
  return this == &o || (spec_ == o.spec_ && dim_ == o.dim_ && hash_ == o.hash_);
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, std::vector<FieldValue> coords)
    : alg_(std::move(alg)), c_(std::move(coords)) {
  if (c_.size() != alg_->dim())
    fail(Errc::bad_dimension, "element coordinate count differs from algebra dimension");
  for (const auto& v : c_)
    if (!(v.spec() == alg_->field())) fail(Errc::spec_mismatch, "element coordinate field mismatch");
}

void AlgebraElement::check_same(const AlgebraElement& o) const {
  if (!alg_ || !o.alg_) fail(Errc::algebra_mismatch, "operation on an empty element");
  if (!alg_->same_as(*o.alg_))
    fail(Errc::algebra_mismatch, "mixing elements of different algebras");
}

bool AlgebraElement::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  check_same(o);
  AlgebraElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  check_same(o);
  AlgebraElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

AlgebraElement AlgebraElement::scaled(const FieldValue& s) const {
  AlgebraElement r = *this;
  for (auto& v : r.c_) v *= s;
  return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  check_same(o);
  const std::size_t d = alg_->dim();
  std::vector<FieldValue> out(d, FieldValue::zero(alg_->field()));
  if (alg_->pointwise()) {
    for (std::size_t i = 0; i < d; ++i)
      if (!c_[i].is_zero() && !o.c_[i].is_zero()) out[i] = c_[i] * o.c_[i];
    return AlgebraElement(alg_, std::move(out));
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.c_[j].is_zero()) continue;
      FieldValue xy = c_[i] * o.c_[j];
      for (const auto& [k, coef] : alg_->product_support(i, j)) out[k] += xy * coef;
    }
  }
  return AlgebraElement(alg_, std::move(out));
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

std::string AlgebraElement::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    if (c_[i].is_one())
      s += alg_->label(i);
    else
      s += c_[i].str() + "*" + alg_->label(i);
  }
  return s.empty() ? "0" : s;
}

AlgebraElement zero_element(const AlgebraPtr& a) {
  return AlgebraElement(a, std::vector<FieldValue>(a->dim(), FieldValue::zero(a->field())));
}

AlgebraElement unit_element(const AlgebraPtr& a) { return AlgebraElement(a, a->unit_coords()); }

AlgebraElement basis_element(const AlgebraPtr& a, std::size_t i) {
  AlgebraElement e = zero_element(a);
  e.set_coord(i, FieldValue::one(a->field()));
  return e;
}

AlgebraElement element_from_int(const AlgebraPtr& a, long long v) {
  return unit_element(a).scaled(FieldValue::of_int(a->field(), v));
}

FMatrix regular_representation(const AlgebraElement& x) {
  const AlgebraPtr& a = x.algebra();
  const std::size_t d = a->dim();
  FMatrix m = FMatrix::zero(a->field(), d, d);
  for (std::size_t j = 0; j < d; ++j) {
    AlgebraElement col = x * basis_element(a, j);
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) = col.coord(i);
  }
  return m;
}

Subspace Subspace::span(AlgebraPtr alg, const FMatrix& vectors) {
  if (vectors.rows > 0 && vectors.cols != alg->dim())
    fail(Errc::bad_dimension, "subspace vector length differs from algebra dimension");
  Subspace s;
  s.alg_ = std::move(alg);
  FMatrix v = vectors;
  v.spec = s.alg_->field();
  v.cols = s.alg_->dim();
  s.rows_ = rref(std::move(v), &s.pivots_);
  return s;
}

Subspace Subspace::zero(AlgebraPtr alg) {
  FieldSpec spec = alg->field();
  std::size_t d = alg->dim();
  FMatrix none = FMatrix::zero(spec, 0, d);
  return span(std::move(alg), none);
}

AlgebraElement Subspace::basis_element(std::size_t i) const {
  std::vector<FieldValue> c(rows_.cols, FieldValue::zero(alg_->field()));
  for (std::size_t j = 0; j < rows_.cols; ++j) c[j] = rows_.at(i, j);
  return AlgebraElement(alg_, std::move(c));
}

bool Subspace::contains(const AlgebraElement& x) const {
  if (!alg_->same_as(*x.algebra())) fail(Errc::algebra_mismatch, "subspace/element algebra mismatch");
  std::vector<FieldValue> r = reduce_against(rows_, pivots_, x.coords());
  for (const auto& v : r)
    if (!v.is_zero()) return false;
  return true;
}

std::vector<FieldValue> Subspace::coordinates_of(const AlgebraElement& x) const {
  // reduce_against subtracts coeff * row at each pivot; those coefficients
  // are exactly the coordinates in the RREF basis.
  std::vector<FieldValue> v = x.coords();
  std::vector<FieldValue> coeffs(rows_.rows, FieldValue::zero(alg_->field()));
  for (std::size_t r = 0; r < rows_.rows; ++r) {
    FieldValue c = v[pivots_[r]];
    coeffs[r] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < rows_.cols; ++j)
      if (!rows_.at(r, j).is_zero()) v[j] -= c * rows_.at(r, j);
  }
  for (const auto& rest : v)
    if (!rest.is_zero()) fail(Errc::precondition, "element lies outside the subspace");
  return coeffs;
}

bool Subspace::operator==(const Subspace& o) const {
  return alg_->same_as(*o.alg_) && rows_ == o.rows_;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (!u.algebra()->same_as(*v.algebra())) fail(Errc::algebra_mismatch, "subspace sum mismatch");
  FMatrix all = u.rows();
  all.a.insert(all.a.end(), v.rows().a.begin(), v.rows().a.end());
  all.rows += v.rows().rows;
  return Subspace::span(u.algebra(), all);
}

Subspace subspace_product(const Subspace& u, const Subspace& v) {
  if (!u.algebra()->same_as(*v.algebra())) fail(Errc::algebra_mismatch, "subspace product mismatch");
  const AlgebraPtr& a = u.algebra();
  FMatrix prods = FMatrix::zero(a->field(), 0, a->dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) {
      AlgebraElement p = u.basis_element(i) * v.basis_element(j);
      prods.a.insert(prods.a.end(), p.coords().begin(), p.coords().end());
      ++prods.rows;
    }
  return Subspace::span(a, prods);
}

Subspace full_subspace(const AlgebraPtr& a) {
  return Subspace::span(a, FMatrix::identity(a->field(), a->dim()));
}

// --- constructor suite ---

namespace {

std::string eij_label(int d, int p, int q) {
  if (d < 10) return "E" + std::to_string(p) + std::to_string(q);
  return "E" + std::to_string(p) + "_" + std::to_string(q);
}

}  // namespace

AlgebraPtr field_algebra(const FieldSpec& s) {
  std::vector<FieldValue> table{FieldValue::one(s)};
  std::vector<FieldValue> unit{FieldValue::one(s)};
  Provenance prov;
  prov.tag = Provenance::Tag::field;
  prov.d = 1;
  return Algebra::make(s, {"1"}, std::move(table), std::move(unit), std::move(prov));
}

namespace {

// Common core for the matrix-unit families: basis = E_pq over a given list of
// (p, q) pairs, products E_pq E_rs = [q==r] E_ps (dropped when E_ps is not in
// the family, which only happens for families closed under multiplication).
AlgebraPtr matrix_unit_algebra(const FieldSpec& s, int d,
                               const std::vector<std::pair<int, int>>& pairs, Provenance prov) {
  const std::size_t dim = pairs.size();
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (auto [p, q] : pairs) labels.push_back(eij_label(d, p, q));
  auto index_of = [&](int p, int q) -> long {
    for (std::size_t i = 0; i < dim; ++i)
      if (pairs[i].first == p && pairs[i].second == q) return static_cast<long>(i);
    return -1;
  };
  std::vector<FieldValue> table(dim * dim * dim, FieldValue::zero(s));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto [p, q] = pairs[i];
      auto [r, t] = pairs[j];
      if (q != r) continue;
      long k = index_of(p, t);
      if (k >= 0) table[(i * dim + j) * dim + k] = FieldValue::one(s);
    }
  std::vector<FieldValue> unit(dim, FieldValue::zero(s));
  for (std::size_t i = 0; i < dim; ++i)
    if (pairs[i].first == pairs[i].second) unit[i] = FieldValue::one(s);
  return Algebra::make(s, std::move(labels), std::move(table), std::move(unit), std::move(prov));
}

}  // namespace

AlgebraPtr matrix_algebra(const FieldSpec& s, int d) {
  if (d < 1) fail(Errc::bad_dimension, "matrix algebra needs d >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int p = 1; p <= d; ++p)
    for (int q = 1; q <= d; ++q) pairs.emplace_back(p, q);
  Provenance prov;
  prov.tag = Provenance::Tag::matrix;
  prov.d = d;
  return matrix_unit_algebra(s, d, pairs, std::move(prov));
}

AlgebraPtr upper_triangular(const FieldSpec& s, int d) {
  if (d < 1) fail(Errc::bad_dimension, "upper triangular algebra needs d >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int p = 1; p <= d; ++p)
    for (int q = p; q <= d; ++q) pairs.emplace_back(p, q);
  Provenance prov;
  prov.tag = Provenance::Tag::upper_triangular;
  prov.d = d;
  return matrix_unit_algebra(s, d, pairs, std::move(prov));
}

AlgebraPtr diagonal(const FieldSpec& s, int d) {
  if (d < 1) fail(Errc::bad_dimension, "diagonal algebra needs d >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int p = 1; p <= d; ++p) pairs.emplace_back(p, p);
  Provenance prov;
  prov.tag = Provenance::Tag::diagonal;
  prov.d = d;
  return matrix_unit_algebra(s, d, pairs, std::move(prov));
}

std::size_t upper_triangular_index(int d, int p, int q) {
  // pairs enumerated row-major: (1,1)..(1,d), (2,2)..(2,d), ...
  std::size_t idx = 0;
  for (int r = 1; r < p; ++r) idx += static_cast<std::size_t>(d - r + 1);
  return idx + static_cast<std::size_t>(q - p);
}

Subspace strictly_upper(const FieldSpec& s, int d) {
  AlgebraPtr u = upper_triangular(s, d);
  FMatrix rows = FMatrix::zero(s, 0, u->dim());
  for (int p = 1; p <= d; ++p)
    for (int q = p + 1; q <= d; ++q) {
      std::vector<FieldValue> v(u->dim(), FieldValue::zero(s));
      v[upper_triangular_index(d, p, q)] = FieldValue::one(s);
      rows.a.insert(rows.a.end(), v.begin(), v.end());
      ++rows.rows;
    }
  return Subspace::span(u, rows);
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!(a->field() == b->field())) fail(Errc::spec_mismatch, "direct sum over different fields");
  const FieldSpec s = a->field();
  const std::size_t da = a->dim(), db = b->dim(), d = da + db;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < da; ++i) labels.push_back("l." + a->label(i));
  for (std::size_t i = 0; i < db; ++i) labels.push_back("r." + b->label(i));
  std::vector<FieldValue> table(d * d * d, FieldValue::zero(s));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < da; ++k) table[(i * d + j) * d + k] = a->structure(i, j, k);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < db; ++k)
        table[((da + i) * d + (da + j)) * d + (da + k)] = b->structure(i, j, k);
  std::vector<FieldValue> unit(d, FieldValue::zero(s));
  for (std::size_t i = 0; i < da; ++i) unit[i] = a->unit_coords()[i];
  for (std::size_t i = 0; i < db; ++i) unit[da + i] = b->unit_coords()[i];
  Provenance prov;
  prov.tag = Provenance::Tag::direct_sum;
  prov.left = a;
  prov.right = b;
  return Algebra::make(s, std::move(labels), std::move(table), std::move(unit), std::move(prov));
}

AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!(a->field() == b->field())) fail(Errc::spec_mismatch, "tensor product over different fields");
  const FieldSpec s = a->field();
  const std::size_t da = a->dim(), db = b->dim(), d = da * db;
  // basis index (i1, i2) -> i1 * db + i2 (row-major)
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) labels.push_back(a->label(i) + "*" + b->label(j));
  std::vector<FieldValue> table(d * d * d, FieldValue::zero(s));
  for (std::size_t i1 = 0; i1 < da; ++i1)
    for (std::size_t j1 = 0; j1 < db; ++j1)
      for (std::size_t i2 = 0; i2 < da; ++i2)
        for (std::size_t j2 = 0; j2 < db; ++j2) {
          std::size_t x = i1 * db + j1, y = i2 * db + j2;
          for (const auto& [ka, ca] : a->product_support(i1, i2))
            for (const auto& [kb, cb] : b->product_support(j1, j2))
              table[(x * d + y) * d + (ka * db + kb)] = ca * cb;
        }
  std::vector<FieldValue> unit(d, FieldValue::zero(s));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) unit[i * db + j] = a->unit_coords()[i] * b->unit_coords()[j];
  Provenance prov;
  prov.tag = Provenance::Tag::tensor;
  prov.left = a;
  prov.right = b;
  return Algebra::make(s, std::move(labels), std::move(table), std::move(unit), std::move(prov));
}

AlgebraPtr tensor_power(const AlgebraPtr& b, int k) {
  if (k < 1) fail(Errc::bad_dimension, "tensor power needs k >= 1");
  AlgebraPtr r = b;
  for (int i = 1; i < k; ++i) r = tensor_product(r, b);
  return r;
}

AlgebraPtr quotient(const AlgebraPtr& a, const Subspace& ideal) {
  if (!ideal.algebra()->same_as(*a)) fail(Errc::algebra_mismatch, "ideal belongs to another algebra");
  const FieldSpec s = a->field();
  const std::size_t d = a->dim();
  // two-sided ideal check
  for (std::size_t i = 0; i < ideal.dim(); ++i) {
    AlgebraElement u = ideal.basis_element(i);
    for (std::size_t j = 0; j < d; ++j) {
      AlgebraElement bj = basis_element(a, j);
      if (!ideal.contains(u * bj) || !ideal.contains(bj * u))
        fail(Errc::not_ideal, "subspace is not a two-sided ideal (fails at " + a->label(j) + ")");
    }
  }
  std::vector<bool> is_pivot(d, false);
  for (auto c : ideal.pivot_cols()) is_pivot[c] = true;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d; ++i)
    if (!is_pivot[i]) keep.push_back(i);
  const std::size_t q = keep.size();
  if (q == 0) fail(Errc::bad_dimension, "quotient by the whole algebra");
  auto project = [&](std::vector<FieldValue> v) {
    std::vector<FieldValue> red = reduce_against(ideal.rows(), ideal.pivot_cols(), std::move(v));
    std::vector<FieldValue> out;
    out.reserve(q);
    for (auto i : keep) out.push_back(red[i]);
    return out;
  };
  std::vector<std::string> labels;
  for (auto i : keep) labels.push_back(a->label(i));
  std::vector<FieldValue> table(q * q * q, FieldValue::zero(s));
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t y = 0; y < q; ++y) {
      AlgebraElement p = basis_element(a, keep[x]) * basis_element(a, keep[y]);
      std::vector<FieldValue> c = project(p.coords());
      for (std::size_t k = 0; k < q; ++k) table[(x * q + y) * q + k] = c[k];
    }
  std::vector<FieldValue> unit = project(a->unit_coords());
  Provenance prov;
  prov.tag = Provenance::Tag::quotient;
  return Algebra::make(s, std::move(labels), std::move(table), std::move(unit), std::move(prov));
}

AlgebraPtr change_of_basis(const AlgebraPtr& a, const FMatrix& t) {
  const std::size_t d = a->dim();
  if (t.rows != d || t.cols != d) fail(Errc::bad_dimension, "basis change matrix must be D x D");
  auto tinv = inverse(t);
  if (!tinv) fail(Errc::precondition, "basis change matrix is singular");
  const FieldSpec s = a->field();
  auto col = [&](std::size_t j) {
    std::vector<FieldValue> v(d, FieldValue::zero(s));
    for (std::size_t i = 0; i < d; ++i) v[i] = t.at(i, j);
    return AlgebraElement(a, std::move(v));
  };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("g" + std::to_string(i + 1));
  std::vector<FieldValue> table(d * d * d, FieldValue::zero(s));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<FieldValue> p = mat_vec(*tinv, (col(i) * col(j)).coords());
      for (std::size_t k = 0; k < d; ++k) table[(i * d + j) * d + k] = p[k];
    }
  std::vector<FieldValue> unit = mat_vec(*tinv, a->unit_coords());
  return Algebra::make(s, std::move(labels), std::move(table), std::move(unit), {});
}

AlgebraElement PhiEmbed::operator()(const AlgebraElement& b) const {
  if (!b.algebra()->same_as(*source)) fail(Errc::algebra_mismatch, "phi_embed source mismatch");
  // Kronecker fold: slot ell carries b, every other slot the unit of B.
  std::vector<FieldValue> acc{FieldValue::one(source->field())};
  for (int s = 0; s <= t; ++s) {
    const std::vector<FieldValue>& f =
        (s == ell) ? b.coords() : source->unit_coords();
    std::vector<FieldValue> next(acc.size() * f.size(), FieldValue::zero(source->field()));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i].is_zero()) continue;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (!f[j].is_zero()) next[i * f.size() + j] = acc[i] * f[j];
    }
    acc = std::move(next);
  }
  return AlgebraElement(target, std::move(acc));
}

PhiEmbed phi_embed(const AlgebraPtr& b_alg, const AlgebraPtr& target, int t, int ell) {
  if (ell < 0 || ell > t) fail(Errc::precondition, "phi_embed slot out of range");
  std::size_t want = 1;
  for (int s = 0; s <= t; ++s) want *= b_alg->dim();
  if (target->dim() != want) fail(Errc::bad_dimension, "phi_embed target is not B^(t+1)");
  PhiEmbed e;
  e.source = b_alg;
  e.target = target;
  e.t = t;
  e.ell = ell;
  return e;
}

AlgMatrix AlgMatrix::zero(const AlgebraPtr& a, std::size_t n) {
  AlgMatrix m;
  m.alg = a;
  m.n = n;
  m.e.assign(n * n, zero_element(a));
  return m;
}

AlgMatrix AlgMatrix::identity(const AlgebraPtr& a, std::size_t n) {
  AlgMatrix m = zero(a, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = unit_element(a);
  return m;
}

}  // namespace algdet
