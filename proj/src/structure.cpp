#include "algdet/structure.hpp"

namespace algdet {

namespace {

// Verify that r is a two-sided ideal of a and nilpotent; throws otherwise.
void verify_radical_candidate(const AlgebraPtr& a, const Subspace& r) {
  for (std::size_t i = 0; i < r.dim(); ++i) {
    AlgebraElement u = r.basis_element(i);
    for (std::size_t j = 0; j < a->dim(); ++j) {
      AlgebraElement bj = basis_element(a, j);
      if (!r.contains(u * bj) || !r.contains(bj * u))
        fail(Errc::not_ideal, "radical candidate is not a two-sided ideal");
    }
  }
  Subspace power = r;
  for (std::size_t k = 0; k < a->dim() && !power.is_zero(); ++k)
    power = subspace_product(power, r);
  if (!power.is_zero()) fail(Errc::not_nilpotent, "radical candidate is not nilpotent");
}

// Kernel of the trace form G[i][j] = trace(L_{a_i a_j}).
Subspace radical_trace_form(const AlgebraPtr& a) {
  const FieldSpec s = a->field();
  const std::size_t d = a->dim();
  if (s.is_prime_field() && s.p <= d)
    fail(Errc::unsupported_characteristic,
         "trace-form radical needs characteristic 0 or p > " + std::to_string(d) +
             " (p = " + std::to_string(s.p) +
             "); supply the radical with a structure override file");
  // trace of left multiplication by each basis vector
  std::vector<FieldValue> tau(d, FieldValue::zero(s));
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k) tau[l] += a->structure(l, k, k);
  FMatrix g = FMatrix::zero(s, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [l, c] : a->product_support(i, j)) g.at(i, j) += c * tau[l];
  return Subspace::span(a, kernel_basis(g));
}

// Embed rows of a child-algebra subspace into a direct-sum parent at offset.
void append_embedded(FMatrix& rows, const Subspace& child, std::size_t offset,
                     std::size_t parent_dim, const FieldSpec& s) {
  for (std::size_t i = 0; i < child.dim(); ++i) {
    std::vector<FieldValue> v(parent_dim, FieldValue::zero(s));
    for (std::size_t j = 0; j < child.rows().cols; ++j) v[offset + j] = child.rows().at(i, j);
    rows.a.insert(rows.a.end(), v.begin(), v.end());
    ++rows.rows;
  }
}

}  // namespace

Subspace radical(const AlgebraPtr& a, const StructureOverride* ov) {
  Subspace r = Subspace::zero(a);
  if (ov && ov->radical_rows) {
    r = Subspace::span(a, *ov->radical_rows);
  } else {
    const Provenance& p = a->provenance();
    switch (p.tag) {
      case Provenance::Tag::field:
      case Provenance::Tag::matrix:
      case Provenance::Tag::diagonal:
        break;  // semisimple: zero radical
      case Provenance::Tag::upper_triangular: {
        const int d = p.d;
        FMatrix rows = FMatrix::zero(a->field(), 0, a->dim());
        for (int pp = 1; pp <= d; ++pp)
          for (int q = pp + 1; q <= d; ++q) {
            std::vector<FieldValue> v(a->dim(), FieldValue::zero(a->field()));
            v[upper_triangular_index(d, pp, q)] = FieldValue::one(a->field());
            rows.a.insert(rows.a.end(), v.begin(), v.end());
            ++rows.rows;
          }
        r = Subspace::span(a, rows);
        break;
      }
      case Provenance::Tag::direct_sum: {
        Subspace rl = radical(p.left);
        Subspace rr = radical(p.right);
        FMatrix rows = FMatrix::zero(a->field(), 0, a->dim());
        append_embedded(rows, rl, 0, a->dim(), a->field());
        append_embedded(rows, rr, p.left->dim(), a->dim(), a->field());
        r = Subspace::span(a, rows);
        break;
      }
      default:
        r = radical_trace_form(a);
        break;
    }
  }
  verify_radical_candidate(a, r);
  return r;
}

int nilpotency_index(const AlgebraPtr& a, const Subspace& r) {
  if (!r.algebra()->same_as(*a)) fail(Errc::algebra_mismatch, "radical belongs to another algebra");
  int d = 1;
  Subspace power = r;
  while (!power.is_zero()) {
    ++d;
    if (static_cast<std::size_t>(d) > a->dim() + 1)
      fail(Errc::not_nilpotent, "subspace power chain does not terminate");
    power = subspace_product(power, r);
  }
  return d;
}

AlgebraElement WMDecomposition::project_b(const AlgebraElement& x) const {
  std::vector<FieldValue> split = mat_vec(split_inverse, x.coords());
  std::vector<FieldValue> out(alg->dim(), FieldValue::zero(alg->field()));
  for (std::size_t i = 0; i < b_basis.dim(); ++i)
    for (std::size_t j = 0; j < alg->dim(); ++j) out[j] += split[i] * split_basis.at(j, i);
  return AlgebraElement(alg, std::move(out));
}

AlgebraElement WMDecomposition::project_r(const AlgebraElement& x) const {
  return x - project_b(x);
}

std::vector<FieldValue> WMDecomposition::b_coordinates(const AlgebraElement& x) const {
  std::vector<FieldValue> split = mat_vec(split_inverse, x.coords());
  split.resize(b_basis.dim(), FieldValue::zero(alg->field()));
  return split;
}

WMDecomposition wm_decompose(const AlgebraPtr& a, const StructureOverride* ov) {
  const FieldSpec s = a->field();
  const std::size_t dd = a->dim();
  WMDecomposition w;
  w.alg = a;
  w.r_basis = radical(a, ov);
  w.quot = quotient(a, w.r_basis);
  w.d = nilpotency_index(a, w.r_basis);
  const std::size_t q = w.quot->dim();
  const std::size_t rdim = w.r_basis.dim();

  // section s: images of the quotient basis vectors, rows in A coordinates
  std::vector<std::vector<FieldValue>> sec(q);
  if (ov && ov->complement_rows) {
    const FMatrix& rows = *ov->complement_rows;
    if (rows.rows != q) fail(Errc::precondition, "complement override has wrong dimension");
    for (std::size_t k = 0; k < q; ++k) {
      sec[k].assign(dd, FieldValue::zero(s));
      for (std::size_t j = 0; j < dd; ++j) sec[k][j] = rows.at(k, j);
    }
  } else {
    // start from the coset-representative section and lift quadratically:
    // given s multiplicative mod N, find correction h into N making s + h
    // multiplicative mod N*N; iterate until the radical power vanishes.
    std::vector<bool> is_pivot(dd, false);
    for (auto c : w.r_basis.pivot_cols()) is_pivot[c] = true;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < dd; ++i)
      if (!is_pivot[i]) keep.push_back(i);
    for (std::size_t k = 0; k < q; ++k) {
      sec[k].assign(dd, FieldValue::zero(s));
      sec[k][keep[k]] = FieldValue::one(s);
    }
    auto sec_elem = [&](std::size_t k) { return AlgebraElement(a, sec[k]); };
    Subspace n = w.r_basis;
    while (!n.is_zero()) {
      Subspace n2 = subspace_product(n, n);
      const std::size_t nu = n.dim();
      std::vector<AlgebraElement> nb;
      for (std::size_t m = 0; m < nu; ++m) nb.push_back(n.basis_element(m));
      // unknowns: coefficients lambda[k][m] of h(q_k) = sum_m lambda[k][m] n_m;
      // equations (one per quotient basis pair (i,j), coordinates mod N2):
      //   s_i h(q_j) + h(q_i) s_j - h(q_i q_j) = s(q_i q_j) - s_i s_j
      const std::size_t unknowns = q * nu;
      FMatrix sys = FMatrix::zero(s, q * q * dd, unknowns);
      std::vector<FieldValue> target(q * q * dd, FieldValue::zero(s));
      auto reduce_mod_n2 = [&](std::vector<FieldValue> v) {
        return reduce_against(n2.rows(), n2.pivot_cols(), std::move(v));
      };
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
          const std::size_t row0 = (i * q + j) * dd;
          std::vector<FieldValue> gamma(q, FieldValue::zero(s));
          for (std::size_t k = 0; k < q; ++k) gamma[k] = w.quot->structure(i, j, k);
          // columns for each unknown (k, m)
          for (std::size_t k = 0; k < q; ++k)
            for (std::size_t m = 0; m < nu; ++m) {
              std::vector<FieldValue> col(dd, FieldValue::zero(s));
              if (j == k) {
                AlgebraElement t = sec_elem(i) * nb[m];
                for (std::size_t c = 0; c < dd; ++c) col[c] += t.coord(c);
              }
              if (i == k) {
                AlgebraElement t = nb[m] * sec_elem(j);
                for (std::size_t c = 0; c < dd; ++c) col[c] += t.coord(c);
              }
              if (!gamma[k].is_zero())
                for (std::size_t c = 0; c < dd; ++c) col[c] -= gamma[k] * nb[m].coord(c);
              col = reduce_mod_n2(std::move(col));
              for (std::size_t c = 0; c < dd; ++c) sys.at(row0 + c, k * nu + m) = col[c];
            }
          // right-hand side: s(q_i q_j) - s(q_i) s(q_j)
          std::vector<FieldValue> rhs(dd, FieldValue::zero(s));
          for (std::size_t k = 0; k < q; ++k)
            if (!gamma[k].is_zero())
              for (std::size_t c = 0; c < dd; ++c) rhs[c] += gamma[k] * sec[k][c];
          AlgebraElement prod = sec_elem(i) * sec_elem(j);
          for (std::size_t c = 0; c < dd; ++c) rhs[c] -= prod.coord(c);
          rhs = reduce_mod_n2(std::move(rhs));
          for (std::size_t c = 0; c < dd; ++c) target[row0 + c] = rhs[c];
        }
      auto sol = solve(sys, target);
      if (!sol)
        fail(Errc::lifting_failure,
             "section lifting is inconsistent; supply the complement with a structure "
             "override file");
      for (std::size_t k = 0; k < q; ++k)
        for (std::size_t m = 0; m < nu; ++m) {
          const FieldValue& lam = (*sol)[k * nu + m];
          if (lam.is_zero()) continue;
          for (std::size_t c = 0; c < dd; ++c) sec[k][c] += lam * nb[m].coord(c);
        }
      n = n2;
    }
  }

  FMatrix brows = FMatrix::zero(s, q, dd);
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t c = 0; c < dd; ++c) brows.at(k, c) = sec[k][c];
  w.b_basis = Subspace::span(a, brows);

  // postconditions: these are the correctness proof, independent of method
  if (w.b_basis.dim() + rdim != dd || subspace_sum(w.b_basis, w.r_basis).dim() != dd)
    fail(Errc::precondition, "complement does not split the algebra as a direct sum");
  for (std::size_t i = 0; i < w.b_basis.dim(); ++i)
    for (std::size_t j = 0; j < w.b_basis.dim(); ++j)
      if (!w.b_basis.contains(w.b_basis.basis_element(i) * w.b_basis.basis_element(j)))
        fail(Errc::precondition, "complement is not closed under multiplication");
  if (!w.b_basis.contains(unit_element(a)))
    fail(Errc::precondition, "complement does not contain the unit");

  // B as an algebra in its own basis
  {
    const std::size_t m = w.b_basis.dim();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("b" + std::to_string(i + 1));
    std::vector<FieldValue> table(m * m * m, FieldValue::zero(s));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<FieldValue> c =
            w.b_basis.coordinates_of(w.b_basis.basis_element(i) * w.b_basis.basis_element(j));
        for (std::size_t k = 0; k < m; ++k) table[(i * m + j) * m + k] = c[k];
      }
    std::vector<FieldValue> unit = w.b_basis.coordinates_of(unit_element(a));
    w.b_algebra = Algebra::make(s, std::move(labels), std::move(table), std::move(unit), {});
  }
  if (w.b_algebra->commutative() != w.quot->commutative())
    fail(Errc::precondition, "complement commutativity disagrees with the quotient");

  w.split_basis = FMatrix::zero(s, dd, dd);
  for (std::size_t k = 0; k < w.b_basis.dim(); ++k)
    for (std::size_t c = 0; c < dd; ++c) w.split_basis.at(c, k) = w.b_basis.rows().at(k, c);
  for (std::size_t k = 0; k < rdim; ++k)
    for (std::size_t c = 0; c < dd; ++c)
      w.split_basis.at(c, w.b_basis.dim() + k) = w.r_basis.rows().at(k, c);
  auto inv = inverse(w.split_basis);
  if (!inv) fail(Errc::internal, "split basis is singular");
  w.split_inverse = *inv;
  return w;
}

DichotomyReport classify(const AlgebraPtr& a, const StructureOverride* ov) {
  DichotomyReport rep;
  Subspace r = radical(a, ov);
  AlgebraPtr q = quotient(a, r);
  rep.quotient_commutative = q->commutative();
  rep.easy = rep.quotient_commutative;
  if (rep.easy) {
    rep.d = nilpotency_index(a, r);
  } else {
    auto [i, j] = q->noncommuting_pair();
    rep.witness = {q->label(i), q->label(j)};
    if (!a->field().is_prime_field())
      rep.field_caveat =
          "hardness is established for finite fields of odd characteristic; over the "
          "rationals the classification is not established";
    else if (a->field().p == 2)
      rep.field_caveat =
          "hardness is established for finite fields of odd characteristic; over "
          "characteristic 2 the classification is not established";
  }
  return rep;
}

}  // namespace algdet
