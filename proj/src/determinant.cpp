#include "algdet/determinant.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace algdet {

namespace {

std::vector<std::vector<std::uint64_t>> binomial_table(int n) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

AlgebraElement permutation_sum(const AlgMatrix& m, bool signed_sum, const Guards& g) {
  const std::size_t n = m.n;
  if (n > g.bruteforce)
    fail(Errc::size_guard, "matrix size " + std::to_string(n) +
                               " exceeds the permutation-sum guard " +
                               std::to_string(g.bruteforce));
  if (n == 0) return unit_element(m.alg);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  AlgebraElement total = zero_element(m.alg);
  do {
    AlgebraElement prod = m.at(0, perm[0]);
    for (std::size_t i = 1; i < n && !prod.is_zero(); ++i) prod = prod * m.at(i, perm[i]);
    if (prod.is_zero()) continue;
    if (signed_sum && permutation_sign(perm) < 0)
      total -= prod;
    else
      total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

Guards guards_from_env() {
  Guards g;
  const char* env = std::getenv("ALGDET_GUARD_OVERRIDE");
  if (!env || !*env) return g;
  std::string s(env);
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      fail(Errc::parse, "ALGDET_GUARD_OVERRIDE item '" + item + "' is not name=value");
    std::string name = item.substr(0, eq);
    std::string digits = item.substr(eq + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail(Errc::parse, "ALGDET_GUARD_OVERRIDE value '" + digits + "' is not a number");
    std::size_t value = std::stoull(digits);
    if (name == "bruteforce")
      g.bruteforce = value;
    else if (name == "expansion")
      g.expansion = value;
    else if (name == "ryser")
      g.ryser = value;
    else if (name == "covers")
      g.covers = value;
    else
      fail(Errc::parse, "ALGDET_GUARD_OVERRIDE names bruteforce, expansion, ryser, covers; got '" +
                            name + "'");
    pos = comma + 1;
  }
  return g;
}

AlgebraElement det_cayley_bruteforce(const AlgMatrix& m, const Guards& g) {
  return permutation_sum(m, true, g);
}

AlgebraElement per_bruteforce(const AlgMatrix& m, const Guards& g) {
  return permutation_sum(m, false, g);
}

namespace {

// Laplace recursion down the rows, memoized on the remaining-column set;
// layer for |S| = t holds D(n-t, S) for all S, indexed by colex rank.
AlgebraElement expansion_generic(const AlgMatrix& m) {
  const int n = static_cast<int>(m.n);
  const AlgebraPtr& alg = m.alg;
  auto c = binomial_table(n);
  std::vector<AlgebraElement> prev{unit_element(alg)};
  std::vector<int> e(n);
  std::vector<std::uint64_t> pre(n + 1), suf(n + 1);
  for (int t = 1; t <= n; ++t) {
    const int i = n - t;
    const std::uint64_t cnt = c[n][t];
    std::vector<AlgebraElement> cur(cnt, zero_element(alg));
    std::uint64_t set = (1ull << t) - 1;
    for (std::uint64_t rank = 0; rank < cnt; ++rank) {
      std::uint64_t x = set;
      for (int s = 0; s < t; ++s) {
        e[s] = std::countr_zero(x);
        x &= x - 1;
      }
      pre[0] = 0;
      for (int s = 0; s < t; ++s) pre[s + 1] = pre[s] + c[e[s]][s + 1];
      suf[t] = 0;
      for (int s = t - 1; s >= 0; --s) suf[s] = suf[s + 1] + c[e[s]][s];
      for (int p = 0; p < t; ++p) {
        const AlgebraElement& entry = m.at(i, e[p]);
        if (entry.is_zero()) continue;
        AlgebraElement term = entry * prev[pre[p] + suf[p + 1]];
        if (p % 2 == 0)
          cur[rank] += term;
        else
          cur[rank] -= term;
      }
      std::uint64_t u = set & (~set + 1);
      std::uint64_t w = set + u;
      set = w | (((set ^ w) >> 2) / u);
    }
    prev = std::move(cur);
  }
  return prev[0];
}

// Same recursion over GF(p) with flat residue arrays and sparse
// left-multiplication tables per matrix entry.
AlgebraElement expansion_prime(const AlgMatrix& m) {
  const int n = static_cast<int>(m.n);
  const AlgebraPtr& alg = m.alg;
  const std::size_t dim = alg->dim();
  const std::int64_t p = alg->field().p;
  auto c = binomial_table(n);

  struct SparseL {
    int col;
    std::vector<std::array<std::int64_t, 3>> kl;  // (k, l, coeff): out[k] += coeff * in[l]
  };
  std::vector<std::vector<SparseL>> rows(n);
  std::vector<std::uint64_t> rowmask(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AlgebraElement& entry = m.at(i, j);
      if (entry.is_zero()) continue;
      FMatrix l = regular_representation(entry);
      SparseL sl;
      sl.col = j;
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t ll = 0; ll < dim; ++ll)
          if (!l.at(k, ll).is_zero())
            sl.kl.push_back({static_cast<std::int64_t>(k), static_cast<std::int64_t>(ll),
                             l.at(k, ll).residue()});
      rows[i].push_back(std::move(sl));
      rowmask[i] |= 1ull << j;
    }

  std::vector<std::int64_t> prev(dim), cur;
  for (std::size_t k = 0; k < dim; ++k) prev[k] = alg->unit_coords()[k].residue();
  std::vector<int> e(n);
  std::vector<std::uint64_t> pre(n + 1), suf(n + 1);
  for (int t = 1; t <= n; ++t) {
    const int i = n - t;
    const std::uint64_t cnt = c[n][t];
    cur.assign(cnt * dim, 0);
    std::uint64_t set = (1ull << t) - 1;
    for (std::uint64_t rank = 0; rank < cnt; ++rank) {
      if (set & rowmask[i]) {
        std::uint64_t x = set;
        for (int s = 0; s < t; ++s) {
          e[s] = std::countr_zero(x);
          x &= x - 1;
        }
        pre[0] = 0;
        for (int s = 0; s < t; ++s) pre[s + 1] = pre[s] + c[e[s]][s + 1];
        suf[t] = 0;
        for (int s = t - 1; s >= 0; --s) suf[s] = suf[s + 1] + c[e[s]][s];
        std::int64_t* out = &cur[rank * dim];
        for (const SparseL& sl : rows[i]) {
          if (!(set >> sl.col & 1)) continue;
          const int pos = std::popcount(set & ((1ull << sl.col) - 1));
          const std::int64_t* child = &prev[(pre[pos] + suf[pos + 1]) * dim];
          if (pos % 2 == 0) {
            for (const auto& [k, l, co] : sl.kl) out[k] = (out[k] + co * child[l]) % p;
          } else {
            for (const auto& [k, l, co] : sl.kl) out[k] = (out[k] + p - co * child[l] % p) % p;
          }
        }
      }
      std::uint64_t u = set & (~set + 1);
      std::uint64_t w = set + u;
      set = w | (((set ^ w) >> 2) / u);
    }
    prev.swap(cur);
  }
  AlgebraElement r = zero_element(alg);
  for (std::size_t k = 0; k < dim; ++k)
    r.set_coord(k, FieldValue::of_int(alg->field(), prev[k]));
  return r;
}

}  // namespace

AlgebraElement det_cayley_expansion(const AlgMatrix& m, const DetOptions& opt) {
  if (m.n > opt.guards.expansion)
    fail(Errc::size_guard, "matrix size " + std::to_string(m.n) +
                               " exceeds the column-subset expansion guard " +
                               std::to_string(opt.guards.expansion));
  if (m.n == 0) return unit_element(m.alg);
  if (m.alg->field().is_prime_field() && !opt.force_generic_expansion)
    return expansion_prime(m);
  return expansion_generic(m);
}

namespace {

using boost::multiprecision::cpp_int;

Rational int128_to_rational(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  cpp_int big = cpp_int(static_cast<std::uint64_t>(u >> 64));
  big <<= 64;
  big += cpp_int(static_cast<std::uint64_t>(u));
  if (neg) big = -big;
  return Rational(big);
}

FieldValue ryser_prime(const FMatrix& m) {
  const int n = static_cast<int>(m.rows);
  const std::int64_t p = m.spec.p;
  std::vector<std::int64_t> a(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = m.at(i, j).residue();
  std::vector<std::int64_t> rowsum(n, 0);
  std::int64_t total = 0;
  for (std::uint64_t k = 1; k < (1ull << n); ++k) {
    const int b = std::countr_zero(k);
    const std::uint64_t gray = k ^ (k >> 1);
    if (gray >> b & 1)
      for (int i = 0; i < n; ++i) rowsum[i] = (rowsum[i] + a[i * n + b]) % p;
    else
      for (int i = 0; i < n; ++i) rowsum[i] = (rowsum[i] + p - a[i * n + b]) % p;
    std::int64_t prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) prod = prod * rowsum[i] % p;
    if (prod == 0) continue;
    if (std::popcount(gray) % 2 == 1) prod = (p - prod) % p;
    total = (total + prod) % p;
  }
  if (n % 2 == 1) total = (p - total) % p;
  return FieldValue::of_int(m.spec, total);
}

FieldValue ryser_rational(const FMatrix& m) {
  const int n = static_cast<int>(m.rows);
  // clear denominators row by row; the permanent scales by the product
  std::vector<cpp_int> a(n * n);
  Rational scale = 1;
  for (int i = 0; i < n; ++i) {
    cpp_int l = 1;
    for (int j = 0; j < n; ++j)
      l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(m.at(i, j).rational()));
    scale *= Rational(l);
    for (int j = 0; j < n; ++j) {
      Rational v = m.at(i, j).rational() * Rational(l);
      a[i * n + j] = boost::multiprecision::numerator(v);
    }
  }
  // int128 kernel when every subset-sum product provably fits
  cpp_int bound = 1;
  bool zero_row = false;
  cpp_int entry_cap = 0;
  for (int i = 0; i < n; ++i) {
    cpp_int s = 0;
    for (int j = 0; j < n; ++j) {
      s += abs(a[i * n + j]);
      entry_cap = std::max(entry_cap, cpp_int(abs(a[i * n + j])));
    }
    if (s == 0) zero_row = true;
    bound *= s;
  }
  if (zero_row) return FieldValue::zero(m.spec);
  Rational total_q;
  if (bound < (cpp_int(1) << (125 - n)) && entry_cap < (cpp_int(1) << 62)) {
    std::vector<__int128> e(n * n), rowsum(n, 0);
    for (int i = 0; i < n * n; ++i) e[i] = a[i].convert_to<std::int64_t>();
    __int128 total = 0;
    for (std::uint64_t k = 1; k < (1ull << n); ++k) {
      const int b = std::countr_zero(k);
      const std::uint64_t gray = k ^ (k >> 1);
      if (gray >> b & 1)
        for (int i = 0; i < n; ++i) rowsum[i] += e[i * n + b];
      else
        for (int i = 0; i < n; ++i) rowsum[i] -= e[i * n + b];
      __int128 prod = 1;
      for (int i = 0; i < n && prod != 0; ++i) prod *= rowsum[i];
      if (std::popcount(gray) % 2 == 1) prod = -prod;
      total += prod;
    }
    if (n % 2 == 1) total = -total;
    total_q = int128_to_rational(total);
  } else {
    std::vector<cpp_int> rowsum(n, 0);
    cpp_int total = 0;
    for (std::uint64_t k = 1; k < (1ull << n); ++k) {
      const int b = std::countr_zero(k);
      const std::uint64_t gray = k ^ (k >> 1);
      if (gray >> b & 1)
        for (int i = 0; i < n; ++i) rowsum[i] += a[i * n + b];
      else
        for (int i = 0; i < n; ++i) rowsum[i] -= a[i * n + b];
      cpp_int prod = 1;
      for (int i = 0; i < n && prod != 0; ++i) prod *= rowsum[i];
      if (std::popcount(gray) % 2 == 1) prod = -prod;
      total += prod;
    }
    if (n % 2 == 1) total = -total;
    total_q = Rational(total);
  }
  return FieldValue::of_rational(Rational(total_q / scale));
}

}  // namespace

FieldValue per_ryser(const FMatrix& m, const Guards& g) {
  if (m.rows != m.cols) fail(Errc::precondition, "permanent needs a square matrix");
  if (m.rows > g.ryser)
    fail(Errc::size_guard, "matrix size " + std::to_string(m.rows) +
                               " exceeds the subset-sum permanent guard " +
                               std::to_string(g.ryser));
  if (m.rows == 0) return FieldValue::one(m.spec);
  return m.spec.is_prime_field() ? ryser_prime(m) : ryser_rational(m);
}

AlgebraElement per_ryser(const AlgMatrix& m, const Guards& g) {
  if (m.alg->dim() != 1)
    fail(Errc::precondition, "subset-sum permanent needs scalar entries (1-dimensional algebra)");
  FMatrix s = FMatrix::zero(m.alg->field(), m.n, m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) s.at(i, j) = m.at(i, j).coord(0);
  FieldValue v = per_ryser(s, g);
  AlgebraElement r = zero_element(m.alg);
  r.set_coord(0, v);
  return r;
}

AlgebraElement det_commutative(const AlgMatrix& m) {
  const AlgebraPtr& alg = m.alg;
  if (!alg->commutative()) {
    auto [i, j] = alg->noncommuting_pair();
    fail(Errc::precondition, "determinant dynamic program needs a commutative algebra; " +
                                 alg->label(i) + " and " + alg->label(j) + " do not commute");
  }
  const std::size_t n = m.n;
  if (n == 0) return unit_element(alg);
  // f[h][u]: signed sum over clow sequences of total length l whose open clow
  // has head h (its minimum vertex) and currently sits at u
  std::vector<std::vector<AlgebraElement>> f(n, std::vector<AlgebraElement>(n, zero_element(alg)));
  for (std::size_t h = 0; h < n; ++h) f[h][h] = unit_element(alg);
  for (std::size_t step = 1; step < n; ++step) {
    std::vector<std::vector<AlgebraElement>> g(n, std::vector<AlgebraElement>(n, zero_element(alg)));
    for (std::size_t h = 0; h < n; ++h) {
      AlgebraElement closed = zero_element(alg);
      for (std::size_t u = h; u < n; ++u) {
        if (f[h][u].is_zero()) continue;
        for (std::size_t v = h + 1; v < n; ++v) {
          if (m.at(u, v).is_zero()) continue;
          g[h][v] += f[h][u] * m.at(u, v);
        }
        if (!m.at(u, h).is_zero()) closed += f[h][u] * m.at(u, h);
      }
      for (std::size_t h2 = h + 1; h2 < n; ++h2) g[h2][h2] -= closed;
    }
    f = std::move(g);
  }
  AlgebraElement total = zero_element(alg);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t u = h; u < n; ++u) {
      if (f[h][u].is_zero() || m.at(u, h).is_zero()) continue;
      total += f[h][u] * m.at(u, h);
    }
  if (n % 2 == 0) total = -total;  // det = (-1)^n * (-total)
  return total;
}

AlgebraElement det_upper_triangular(const AlgMatrix& m) {
  const AlgebraPtr& alg = m.alg;
  if (alg->provenance().tag != Provenance::Tag::upper_triangular)
    fail(Errc::precondition,
         "entrywise-sequence determinant needs an upper-triangular matrix algebra");
  const int d = alg->provenance().d;
  const std::size_t n = m.n;
  AlgebraElement result = zero_element(alg);
  if (n == 0) return unit_element(alg);
  const FieldSpec s = alg->field();
  std::vector<int> ks(n + 1);
  FMatrix scalar = FMatrix::zero(s, n, n);
  for (int p = 1; p <= d; ++p)
    for (int q = p; q <= d; ++q) {
      // nondecreasing interior sequences p <= k_1 <= ... <= k_{n-1} <= q,
      // enumerated lexicographically by an odometer
      ks[0] = p;
      ks[n] = q;
      for (std::size_t i = 1; i < n; ++i) ks[i] = p;
      FieldValue acc = FieldValue::zero(s);
      while (true) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            scalar.at(i, j) = m.at(i, j).coord(upper_triangular_index(d, ks[i], ks[i + 1]));
        acc += det_scalar(scalar);
        if (n == 1) break;
        std::size_t pos = n - 1;
        while (pos >= 1 && ks[pos] == q) --pos;
        if (pos < 1) break;
        ++ks[pos];
        for (std::size_t i = pos + 1; i < n; ++i) ks[i] = ks[pos];
      }
      result.set_coord(upper_triangular_index(d, p, q), acc);
    }
  return result;
}

AlgebraElement det_general(const AlgMatrix& m, const WMDecomposition& w, DetStats* stats) {
  const AlgebraPtr& a = m.alg;
  if (!a->same_as(*w.alg)) fail(Errc::algebra_mismatch, "decomposition belongs to another algebra");
  if (!w.b_algebra->commutative()) {
    auto [i, j] = w.b_algebra->noncommuting_pair();
    fail(Errc::precondition, "semisimple complement is not commutative (" +
                                 w.b_algebra->label(i) + ", " + w.b_algebra->label(j) + ")");
  }
  const int n = static_cast<int>(m.n);
  const int d = w.d;
  const std::size_t bdim = w.b_algebra->dim();
  if (n == 0) return unit_element(a);

  std::vector<AlgebraElement> b_el, r_el;
  std::vector<char> r_nz(n * n, 0);
  b_el.reserve(n * n);
  r_el.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      b_el.emplace_back(w.b_algebra, w.b_coordinates(m.at(i, j)));
      r_el.push_back(w.project_r(m.at(i, j)));
      r_nz[i * n + j] = !r_el.back().is_zero();
    }
  std::vector<AlgebraElement> bvec;
  for (std::size_t k = 0; k < bdim; ++k) bvec.push_back(w.b_basis.basis_element(k));

  AlgebraElement result = zero_element(a);
  for (int t = 0; t < d && t <= n; ++t) {
    AlgebraPtr tens = tensor_power(w.b_algebra, t + 1);
    std::vector<PhiEmbed> phis;
    for (int ell = 0; ell <= t; ++ell) phis.push_back(phi_embed(w.b_algebra, tens, t, ell));
    // phi images of every B-part, per slot index
    std::vector<std::vector<AlgebraElement>> img(t + 1);
    for (int ell = 0; ell <= t; ++ell) {
      img[ell].reserve(n * n);
      for (int ij = 0; ij < n * n; ++ij) img[ell].push_back(phis[ell](b_el[ij]));
    }

    std::vector<int> subset(t);
    for (int s = 0; s < t; ++s) subset[s] = s;
    while (true) {
      std::vector<char> in_s(n, 0);
      for (int s = 0; s < t; ++s) in_s[subset[s]] = 1;
      AlgMatrix mp = AlgMatrix::zero(tens, n);
      {
        int ell = 0;
        for (int i = 0; i < n; ++i) {
          if (in_s[i]) {
            ++ell;
            continue;
          }
          for (int j = 0; j < n; ++j) mp.at(i, j) = img[ell][i * n + j];
        }
      }
      // injective column maps f over the subset rows, columns chosen ascending
      std::vector<int> cols(t, -1);
      std::vector<char> used(n, 0);
      auto emit = [&]() {
        if (stats) ++stats->sf_pairs;
        for (int s = 0; s < t; ++s)
          if (!r_nz[subset[s] * n + cols[s]]) return;
        for (int s = 0; s < t; ++s) {
          const int i = subset[s];
          for (int j = 0; j < n; ++j)
            mp.at(i, j) = (j == cols[s]) ? unit_element(tens) : zero_element(tens);
        }
        AlgebraElement dc = det_commutative(mp);
        for (std::size_t idx = 0; idx < tens->dim(); ++idx) {
          const FieldValue& c = dc.coord(idx);
          if (c.is_zero()) continue;
          std::size_t rem = idx;
          std::vector<std::size_t> kbar(t + 1);
          for (int s = t; s >= 0; --s) {
            kbar[s] = rem % bdim;
            rem /= bdim;
          }
          AlgebraElement acc = bvec[kbar[0]];
          for (int s = 1; s <= t; ++s) {
            acc = acc * r_el[subset[s - 1] * n + cols[s - 1]];
            acc = acc * bvec[kbar[s]];
          }
          result += acc.scaled(c);
        }
      };
      std::function<void(int)> rec = [&](int s) {
        if (s == t) {
          emit();
          return;
        }
        for (int j = 0; j < n; ++j) {
          if (used[j]) continue;
          used[j] = 1;
          cols[s] = j;
          rec(s + 1);
          used[j] = 0;
        }
      };
      rec(0);

      // next t-combination of [n] in ascending order
      if (t == 0) break;
      int s = t - 1;
      while (s >= 0 && subset[s] == n - t + s) --s;
      if (s < 0) break;
      ++subset[s];
      for (int s2 = s + 1; s2 < t; ++s2) subset[s2] = subset[s2 - 1] + 1;
    }
  }
  return result;
}

DetOutcome det_auto(const AlgMatrix& m, const DetOptions& opt) {
  DetOutcome out;
  out.report = classify(m.alg, opt.structure);
  if (!out.report.easy) {
    if (opt.force_oracle && m.n <= opt.guards.expansion) {
      out.value = det_cayley_expansion(m, opt);
      out.algorithm = "exponential-oracle";
    }
    return out;
  }
  if (m.alg->commutative()) {
    out.value = det_commutative(m);
    out.algorithm = "commutative";
  } else if (m.alg->provenance().tag == Provenance::Tag::upper_triangular) {
    out.value = det_upper_triangular(m);
    out.algorithm = "upper-triangular";
  } else {
    WMDecomposition w = wm_decompose(m.alg, opt.structure);
    out.value = det_general(m, w);
    out.algorithm = "general";
  }
  return out;
}

}  // namespace algdet
