#include "algdet/reduction.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace algdet {
namespace {

FieldValue fv(const FieldSpec& s, long long v) { return FieldValue::of_int(s, v); }

FMatrix mat_scaled(const FMatrix& m, const FieldValue& c) {
  FMatrix r = m;
  for (auto& x : r.a) x = x * c;
  return r;
}

FMatrix mat_sum(const FMatrix& x, const FMatrix& y) {
  FMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
  return r;
}

FMatrix make2(const FieldSpec& s, long long a, long long b, long long c, long long d) {
  FMatrix m = FMatrix::zero(s, 2, 2);
  m.at(0, 0) = fv(s, a);
  m.at(0, 1) = fv(s, b);
  m.at(1, 0) = fv(s, c);
  m.at(1, 1) = fv(s, d);
  return m;
}

}  // namespace

// ---------- CNF ----------

CnfFormula make_cnf(int n_vars, const std::vector<std::array<int, 3>>& clauses) {
  if (n_vars < 1) fail(Errc::precondition, "a formula needs at least one variable");
  if (clauses.empty()) fail(Errc::precondition, "a formula needs at least one clause");
  CnfFormula f;
  f.n_vars = n_vars;
  f.pos_occ.resize(n_vars);
  f.neg_occ.resize(n_vars);
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    std::array<Literal, 3> cl;
    for (int k = 0; k < 3; ++k) {
      int lit = clauses[ci][k];
      if (lit == 0) fail(Errc::parse, "literal 0 inside a clause");
      int v = lit > 0 ? lit : -lit;
      if (v > n_vars)
        fail(Errc::parse, "variable " + std::to_string(v) + " undeclared (declared " +
                              std::to_string(n_vars) + ")");
      cl[k] = Literal{v, lit > 0};
      auto& occ = lit > 0 ? f.pos_occ[v - 1] : f.neg_occ[v - 1];
      occ.emplace_back(static_cast<int>(ci), k);
    }
    f.clauses.push_back(cl);
  }
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  int n_vars = -1, n_clauses = -1;
  std::vector<std::array<int, 3>> clauses;
  std::vector<int> cur;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (n_vars >= 0) fail(Errc::parse, "duplicate problem line");
      std::string fmt;
      if (!(ls >> fmt >> n_vars >> n_clauses) || fmt != "cnf" || n_vars < 1 || n_clauses < 1)
        fail(Errc::parse, "malformed problem line; expected `p cnf <vars> <clauses>`");
      continue;
    }
    if (n_vars < 0) fail(Errc::parse, "clause data before the problem line");
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (cur.empty()) fail(Errc::parse, "empty clause");
        if (cur.size() > 3) fail(Errc::parse, "clause with more than 3 literals");
        while (cur.size() < 3) cur.push_back(cur.back());  // padding keeps the count
        clauses.push_back({cur[0], cur[1], cur[2]});
        cur.clear();
      } else {
        cur.push_back(lit);
      }
    }
    if (ls.bad() || (!ls.eof() && ls.fail())) fail(Errc::parse, "non-integer clause token");
  }
  if (n_vars < 0) fail(Errc::parse, "missing problem line");
  if (!cur.empty()) fail(Errc::parse, "clause not terminated by 0");
  if (static_cast<int>(clauses.size()) != n_clauses)
    fail(Errc::parse, "problem line declares " + std::to_string(n_clauses) + " clauses, found " +
                          std::to_string(clauses.size()));
  return make_cnf(n_vars, clauses);
}

long long count_sat_bruteforce(const CnfFormula& f) {
  if (f.n_vars > 20)
    fail(Errc::size_guard, "satisfying-assignment count guard: " + std::to_string(f.n_vars) +
                               " variables exceeds 20");
  long long s = 0;
  for (std::uint32_t bits = 0; bits < (1u << f.n_vars); ++bits) {
    bool ok = true;
    for (const auto& cl : f.clauses) {
      bool sat = false;
      for (const Literal& l : cl)
        if (((bits >> (l.var - 1)) & 1u) == (l.positive ? 1u : 0u)) {
          sat = true;
          break;
        }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) ++s;
  }
  return s;
}

// ---------- graphs and covers ----------

void GadgetGraph::add_edge(int u, int v, FMatrix wt) {
  if (u < 0 || u >= n || v < 0 || v >= n) fail(Errc::precondition, "edge endpoint out of range");
  if (static_cast<int>(wt.rows) != block_dim() || wt.cols != wt.rows)
    fail(Errc::precondition, "edge weight block has the wrong shape");
  if (!w.emplace(Edge{u, v}, std::move(wt)).second)
    fail(Errc::precondition, "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
}

namespace {

std::vector<std::vector<int>> out_lists(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> out(n);
  for (const Edge& e : edges) out[e.first].push_back(e.second);
  for (auto& l : out) std::sort(l.begin(), l.end());
  return out;
}

// Depth-first successor assignment in vertex order; emits covers in
// lexicographic order. Returns false from emit to stop early.
template <class Emit>
void for_each_cover(const std::vector<std::vector<int>>& out, Emit emit) {
  int n = static_cast<int>(out.size());
  std::vector<int> succ(n, -1);
  std::vector<char> used(n, 0);
  bool stop = false;
  auto rec = [&](auto&& self, int u) -> void {
    if (stop) return;
    if (u == n) {
      if (!emit(succ)) stop = true;
      return;
    }
    for (int v : out[u]) {
      if (used[v]) continue;
      used[v] = 1;
      succ[u] = v;
      self(self, u + 1);
      used[v] = 0;
      if (stop) return;
    }
    succ[u] = -1;
  };
  rec(rec, 0);
}

}  // namespace

std::vector<std::vector<int>> cycle_cover_successors(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> res;
  for_each_cover(out_lists(n, edges), [&](const std::vector<int>& succ) {
    res.push_back(succ);
    return true;
  });
  return res;
}

std::optional<std::vector<int>> first_cycle_cover(int n, const std::vector<Edge>& edges) {
  std::optional<std::vector<int>> res;
  for_each_cover(out_lists(n, edges), [&](const std::vector<int>& succ) {
    res = succ;
    return false;
  });
  return res;
}

int cover_cycle_count(const std::vector<int>& succ) {
  int n = static_cast<int>(succ.size()), c = 0;
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = i; !seen[j]; j = succ[j]) seen[j] = 1;
  }
  return c;
}

std::vector<CycleCover> enumerate_cycle_covers(const GadgetGraph& g, const Guards& guards) {
  if (g.n > guards.covers)
    fail(Errc::size_guard, "cycle-cover enumeration guard: " + std::to_string(g.n) +
                               " vertices exceeds " + std::to_string(guards.covers));
  std::vector<Edge> edges;
  edges.reserve(g.w.size());
  for (const auto& [e, wt] : g.w) edges.push_back(e);
  std::vector<CycleCover> res;
  for_each_cover(out_lists(g.n, edges), [&](const std::vector<int>& succ) {
    CycleCover c;
    c.succ = succ;
    c.cycles = cover_cycle_count(succ);
    c.sign = ((g.n - c.cycles) % 2 == 0) ? 1 : -1;
    c.weight = FMatrix::identity(g.spec, g.block_dim());
    for (int u = 0; u < g.n; ++u) c.weight = mat_mul(c.weight, g.w.at({u, succ[u]}));
    res.push_back(std::move(c));
    return true;
  });
  return res;
}

AlgMatrix adjacency_block_matrix(const GadgetGraph& g) {
  if (g.mode != WeightMode::det)
    fail(Errc::precondition, "block adjacency needs a determinant-mode graph");
  AlgMatrix m = AlgMatrix::zero(matrix_algebra(g.spec, 2), g.n);
  for (const auto& [e, wt] : g.w)
    m.at(e.first, e.second) =
        AlgebraElement(m.alg, {wt.at(0, 0), wt.at(0, 1), wt.at(1, 0), wt.at(1, 1)});
  return m;
}

FMatrix adjacency_scalar_matrix(const GadgetGraph& g) {
  if (g.mode != WeightMode::per)
    fail(Errc::precondition, "scalar adjacency needs a permanent-mode graph");
  FMatrix m = FMatrix::zero(g.spec, g.n, g.n);
  for (const auto& [e, wt] : g.w) m.at(e.first, e.second) = wt.at(0, 0);
  return m;
}

// ---------- variable gadget ----------

GadgetFragment build_variable_gadget(int t, int f) {
  if (t < 0 || f < 0) fail(Errc::precondition, "occurrence counts must be nonnegative");
  int a = 0;
  while (a + 1 < t || a % 2) ++a;
  int b = 0;
  while (b + 1 < f || b % 2) ++b;
  if (a == 0 && b == 0) b = 2;  // avoids parallel s -> s' edges
  GadgetFragment g;
  g.n = 2 + a + b;
  std::vector<Edge> tpath, fpath;
  int prev = 0;
  for (int i = 0; i < a; ++i) {
    tpath.emplace_back(prev, 2 + i);
    prev = 2 + i;
  }
  tpath.emplace_back(prev, 1);
  prev = 0;
  for (int i = 0; i < b; ++i) {
    fpath.emplace_back(prev, 2 + a + i);
    prev = 2 + a + i;
  }
  fpath.emplace_back(prev, 1);
  g.edges = tpath;
  g.edges.insert(g.edges.end(), fpath.begin(), fpath.end());
  g.middle = Edge{1, 0};
  g.edges.push_back(*g.middle);
  for (int i = 0; i < a + b; ++i) g.edges.emplace_back(2 + i, 2 + i);
  g.true_externals.assign(tpath.begin(), tpath.begin() + t);
  g.false_externals.assign(fpath.begin(), fpath.begin() + f);

  // contract check: two covers (one per side), odd cycle counts, equal signs,
  // each external edge in exactly one cover
  if (g.n <= 14) {
    auto covs = cycle_cover_successors(g.n, g.edges);
    if (covs.size() != 2) fail(Errc::internal, "variable gadget: cover count != 2");
    int c0 = cover_cycle_count(covs[0]), c1 = cover_cycle_count(covs[1]);
    if (c0 % 2 != 1 || c1 % 2 != 1) fail(Errc::internal, "variable gadget: even cycle count");
    if ((g.n - c0) % 2 != (g.n - c1) % 2) fail(Errc::internal, "variable gadget: unequal signs");
    for (const Edge& e : g.true_externals) {
      int uses = (covs[0][e.first] == e.second) + (covs[1][e.first] == e.second);
      if (uses != 1) fail(Errc::internal, "variable gadget: external edge not in exactly one cover");
    }
    for (const Edge& e : g.false_externals) {
      int uses = (covs[0][e.first] == e.second) + (covs[1][e.first] == e.second);
      if (uses != 1) fail(Errc::internal, "variable gadget: external edge not in exactly one cover");
    }
  }
  return g;
}

// ---------- clause gadget ----------

void verify_clause_gadget(const GadgetFragment& g) {
  if (!g.marker || g.externals.size() != 3)
    fail(Errc::internal, "clause gadget: missing marker or externals");
  auto covs = cycle_cover_successors(g.n, g.edges);
  if (covs.size() != 7) fail(Errc::internal, "clause gadget: cover count != 7");
  std::vector<int> sig_seen(8, 0);
  long long shared = 0;
  bool first = true;
  for (const auto& succ : covs) {
    int sig = 0;
    for (int k = 0; k < 3; ++k)
      if (succ[g.externals[k].first] == g.externals[k].second) sig |= 1 << k;
    if (sig == 7) fail(Errc::internal, "clause gadget: a cover uses all three externals");
    ++sig_seen[sig];
    int c = cover_cycle_count(succ);
    if (c != 1 && c != 2) fail(Errc::internal, "clause gadget: cycle count outside {1,2}");
    bool marked = succ[g.marker->first] == g.marker->second;
    if (marked != (c == 2))
      fail(Errc::internal, "clause gadget: marker edge not aligned with the 2-cycle covers");
    // signed weight with marker weight -1 and everything else 1
    int n = static_cast<int>(succ.size());
    long long sw = ((n - c) % 2 == 0 ? 1 : -1) * (marked ? -1 : 1);
    if (first) {
      shared = sw;
      first = false;
    } else if (sw != shared) {
      fail(Errc::internal, "clause gadget: signed cover weights differ under the marker sign");
    }
  }
  for (int sig = 0; sig < 7; ++sig)
    if (sig_seen[sig] != 1)
      fail(Errc::internal, "clause gadget: external subset not used by exactly one cover");
}

const GadgetFragment& clause_gadget() {
  static const GadgetFragment g = [] {
    GadgetFragment c;
    c.n = 5;
    c.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 0}, {1, 2}, {1, 3},
               {2, 1}, {2, 3}, {2, 4}, {3, 0}, {3, 4}, {4, 0}, {4, 1}};
    c.externals = {{0, 2}, {2, 3}, {3, 0}};
    c.marker = Edge{0, 3};
    verify_clause_gadget(c);
    return c;
  }();
  return g;
}

GadgetFragment synthesize_clause_gadget(int vertex_budget) {
  for (int nv = 2; nv <= vertex_budget; ++nv) {
    std::vector<Edge> cand;
    for (int u = 0; u < nv; ++u)
      for (int v = 0; v < nv; ++v) cand.emplace_back(u, v);
    int ncand = nv * nv;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ncand); ++mask) {
      std::vector<int> outd(nv, 0), ind(nv, 0);
      std::vector<Edge> edges;
      std::vector<int> eidx;
      for (int i = 0; i < ncand; ++i)
        if (mask >> i & 1) {
          edges.push_back(cand[i]);
          eidx.push_back(i);
          ++outd[cand[i].first];
          ++ind[cand[i].second];
        }
      bool degenerate = false;
      for (int v = 0; v < nv; ++v)
        if (outd[v] == 0 || ind[v] == 0) {
          degenerate = true;
          break;
        }
      if (degenerate) continue;
      // bail out as soon as an eighth cover appears
      std::vector<std::vector<int>> covs;
      for_each_cover(out_lists(nv, edges), [&](const std::vector<int>& succ) {
        covs.push_back(succ);
        return covs.size() <= 7;
      });
      if (covs.size() != 7) continue;
      std::vector<int> ncyc;
      bool big = false;
      for (const auto& succ : covs) {
        int c = cover_cycle_count(succ);
        if (c > 2) {
          big = true;
          break;
        }
        ncyc.push_back(c);
      }
      if (big) continue;
      std::vector<int> nonloop;
      for (int i : eidx)
        if (cand[i].first != cand[i].second) nonloop.push_back(i);
      // first index triple whose usage signatures hit each proper subset once
      std::array<int, 3> tri{};
      bool found = false;
      int nl = static_cast<int>(nonloop.size());
      for (int x = 0; x < nl - 2 && !found; ++x)
        for (int y = x + 1; y < nl - 1 && !found; ++y)
          for (int zz = y + 1; zz < nl && !found; ++zz) {
            std::array<int, 3> t{nonloop[x], nonloop[y], nonloop[zz]};
            std::vector<int> sigs;
            for (const auto& succ : covs) {
              int sig = 0;
              for (int k = 0; k < 3; ++k)
                if (succ[cand[t[k]].first] == cand[t[k]].second) sig |= 1 << k;
              sigs.push_back(sig);
            }
            std::sort(sigs.begin(), sigs.end());
            if (sigs == std::vector<int>{0, 1, 2, 3, 4, 5, 6}) {
              tri = t;
              found = true;
            }
          }
      if (!found) continue;
      // marker: first remaining edge in all 2-cycle covers and no 1-cycle ones
      std::optional<Edge> marker;
      for (int i : eidx) {
        if (i == tri[0] || i == tri[1] || i == tri[2]) continue;
        bool ok = true;
        for (std::size_t ci = 0; ci < covs.size() && ok; ++ci) {
          bool uses = covs[ci][cand[i].first] == cand[i].second;
          if (uses != (ncyc[ci] == 2)) ok = false;
        }
        if (ok) {
          marker = cand[i];
          break;
        }
      }
      if (!marker) continue;
      GadgetFragment g;
      g.n = nv;
      g.edges = edges;
      g.externals = {cand[tri[0]], cand[tri[1]], cand[tri[2]]};
      g.marker = marker;
      verify_clause_gadget(g);
      return g;
    }
  }
  fail(Errc::no_gadget, "clause-gadget synthesis exhausted its vertex budget of " +
                            std::to_string(vertex_budget));
}

// ---------- XOR gadget ----------

FMatrix xor_mat_x(const FieldSpec& s) { return make2(s, 1, 0, 0, -1); }
FMatrix xor_mat_y(const FieldSpec& s) { return make2(s, 0, -1, -1, 0); }
FMatrix xor_mat_z(const FieldSpec& s) { return make2(s, 0, -1, 1, 0); }
FMatrix xor_mat_j2(const FieldSpec& s) { return make2(s, 0, 1, 1, 0); }

std::array<std::array<FMatrix, 4>, 4> xor_block_rows(const FieldSpec& s) {
  FMatrix O = FMatrix::zero(s, 2, 2), I = FMatrix::identity(s, 2);
  FMatrix X = xor_mat_x(s), Y = xor_mat_y(s), Z = xor_mat_z(s);
  FieldValue m1 = fv(s, -1), two = fv(s, 2), three = fv(s, 3);
  return {{
      {O, mat_scaled(X, m1), mat_scaled(Y, m1), Z},
      {O, X, mat_scaled(Y, two), Z},
      {O, mat_scaled(X, three), O, Z},
      {I, X, Y, mat_scaled(Z, m1)},
  }};
}

FMatrix xor_scalar_rows(const FieldSpec& s) {
  FMatrix m = FMatrix::zero(s, 4, 4);
  const long long vals[4][4] = {{0, -1, -1, 1}, {0, 1, 2, 1}, {0, 3, 0, 1}, {1, 1, 1, -1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = fv(s, vals[i][j]);
  return m;
}

void apply_xor_replacement(GadgetGraph& g, Edge e_u, Edge e_v, const std::string& tag) {
  auto iu = g.w.find(e_u), iv = g.w.find(e_v);
  if (iu == g.w.end() || iv == g.w.end())
    fail(Errc::precondition, "splice target edge is missing from the graph");
  FMatrix unit = g.unit_weight();
  if (!(iu->second == unit) || !(iv->second == unit))
    fail(Errc::precondition, "splice target edge carries a non-identity weight");
  int u = e_u.first, up = e_u.second, v = e_v.first, vp = e_v.second;
  if (u == up || u == v || u == vp || up == v || up == vp || v == vp)
    fail(Errc::precondition, "splice target edges must have four distinct endpoints");
  g.w.erase(iu);
  g.w.erase(iv);
  int a = g.n, c = g.n + 2;
  std::array<int, 4> vid{g.n, g.n + 1, g.n + 2, g.n + 3};
  g.n += 4;
  g.vertex_tag.insert(g.vertex_tag.end(), 4, tag);
  if (g.mode == WeightMode::det) {
    auto rows = xor_block_rows(g.spec);
    FMatrix zero = FMatrix::zero(g.spec, 2, 2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!(rows[i][j] == zero)) g.add_edge(vid[i], vid[j], rows[i][j]);
  } else {
    FMatrix rows = xor_scalar_rows(g.spec);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (!rows.at(i, j).is_zero()) {
          FMatrix cell = FMatrix::zero(g.spec, 1, 1);
          cell.at(0, 0) = rows.at(i, j);
          g.add_edge(vid[i], vid[j], cell);
        }
  }
  g.add_edge(u, a, unit);
  g.add_edge(c, up, unit);
  g.add_edge(v, c, unit);
  g.add_edge(a, vp, unit);
  // the two spliced edges are no longer designated externals
  std::erase_if(g.externals,
                [&](const auto& x) { return std::get<3>(x) == e_u || std::get<3>(x) == e_v; });
}

namespace {

// Cayley determinant / permanent of a small matrix of weight blocks, by
// direct permutation expansion with row-ordered products.
FMatrix block_permutation_sum(const std::vector<std::vector<FMatrix>>& m, const FieldSpec& s,
                              int bd, bool signed_sum) {
  int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  FMatrix acc = FMatrix::zero(s, bd, bd);
  do {
    FMatrix w = FMatrix::identity(s, bd);
    for (int i = 0; i < n; ++i) w = mat_mul(w, m[i][perm[i]]);
    if (signed_sum) {
      std::vector<char> seen(n, 0);
      int c = 0;
      for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++c;
        for (int j = i; !seen[j]; j = perm[j]) seen[j] = 1;
      }
      if ((n - c) % 2) w = mat_scaled(w, fv(s, -1));
    }
    acc = mat_sum(acc, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

std::vector<std::vector<FMatrix>> block_minor(const std::vector<std::vector<FMatrix>>& m,
                                              std::uint32_t rows_del, std::uint32_t cols_del) {
  std::vector<std::vector<FMatrix>> r;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (rows_del >> i & 1) continue;
    std::vector<FMatrix> row;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!(cols_del >> j & 1)) row.push_back(m[i][j]);
    r.push_back(std::move(row));
  }
  return r;
}

}  // namespace

void check_xor_minor_identities(const FieldSpec& s) {
  auto rows = xor_block_rows(s);
  std::vector<std::vector<FMatrix>> M(4);
  for (int i = 0; i < 4; ++i) M[i] = {rows[i][0], rows[i][1], rows[i][2], rows[i][3]};
  FMatrix I = FMatrix::identity(s, 2), J = xor_mat_j2(s);
  FMatrix zero = FMatrix::zero(s, 2, 2);
  FieldValue m4 = fv(s, -4);
  auto det = [&](std::uint32_t rd, std::uint32_t cd) {
    return block_permutation_sum(block_minor(M, rd, cd), s, 2, true);
  };
  // vertices (a,b,c,d) sit at indices (0,1,2,3); the spliced row/column pairs
  // are (c-row, a-column) and (a-row, c-column)
  if (!(det(0b0100, 0b0001) == mat_scaled(I, m4)))
    fail(Errc::internal, "xor gadget: u-side minor determinant != -4*I2");
  if (!(det(0b0001, 0b0100) == mat_scaled(J, m4)))
    fail(Errc::internal, "xor gadget: v-side minor determinant != -4*J2");
  if (!(det(0, 0) == zero)) fail(Errc::internal, "xor gadget: full determinant != 0");
  if (!(det(0b0001, 0b0001) == zero))
    fail(Errc::internal, "xor gadget: a-diagonal minor determinant != 0");
  if (!(det(0b0100, 0b0100) == zero))
    fail(Errc::internal, "xor gadget: c-diagonal minor determinant != 0");
  if (!(det(0b0101, 0b0101) == zero))
    fail(Errc::internal, "xor gadget: double minor determinant != 0");

  // scalar shadow, permanent mode
  FMatrix sc = xor_scalar_rows(s);
  std::vector<std::vector<FMatrix>> S(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      FMatrix cell = FMatrix::zero(s, 1, 1);
      cell.at(0, 0) = sc.at(i, j);
      S[i].push_back(cell);
    }
  }
  auto per = [&](std::uint32_t rd, std::uint32_t cd) {
    return block_permutation_sum(block_minor(S, rd, cd), s, 1, false).at(0, 0);
  };
  if (!(per(0b0100, 0b0001) == fv(s, 4)))
    fail(Errc::internal, "xor gadget: scalar u-side minor permanent != 4");
  if (!(per(0b0001, 0b0100) == fv(s, 4)))
    fail(Errc::internal, "xor gadget: scalar v-side minor permanent != 4");
  if (!per(0, 0).is_zero() || !per(0b0001, 0b0001).is_zero() ||
      !per(0b0100, 0b0100).is_zero() || !per(0b0101, 0b0101).is_zero())
    fail(Errc::internal, "xor gadget: scalar vanishing permanent identity failed");
}

namespace {

// Deterministic helpers over the raw mt19937_64 stream; std::uniform_* is
// implementation-defined, and seeded runs must reproduce bit-for-bit.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t m) { return rng() % m; }

}  // namespace

void check_xor_replacement_totals(const FieldSpec& s, std::uint64_t seed, int hosts) {
  std::mt19937_64 rng(seed);
  FMatrix I = FMatrix::identity(s, 2);
  FMatrix J = xor_mat_j2(s);
  FMatrix zero2 = FMatrix::zero(s, 2, 2);
  int done = 0;
  while (done < hosts) {
    int n = 4 + static_cast<int>(rand_below(rng, 2));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (rng() & 1) edges.emplace_back(u, v);
    std::vector<Edge> nonloop;
    for (const Edge& e : edges)
      if (e.first != e.second) nonloop.push_back(e);
    std::vector<std::pair<Edge, Edge>> pairs;
    for (const Edge& e1 : nonloop)
      for (const Edge& e2 : nonloop) {
        int a = e1.first, b = e1.second, c = e2.first, d = e2.second;
        if (a != c && a != d && b != c && b != d) pairs.emplace_back(e1, e2);
      }
    if (pairs.empty()) continue;
    auto [eu, ev] = pairs[rand_below(rng, pairs.size())];

    GadgetGraph g;
    g.spec = s;
    g.mode = WeightMode::det;
    g.n = n;
    g.vertex_tag.assign(n, "host");
    for (const Edge& e : edges) {
      FMatrix wt = FMatrix::zero(s, 2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          wt.at(i, j) = fv(s, static_cast<long long>(rand_below(rng, 5)) - 2);
      g.add_edge(e.first, e.second, wt);
    }
    g.w.at(eu) = I;
    g.w.at(ev) = I;

    auto covs = enumerate_cycle_covers(g);
    GadgetGraph g2 = g;
    apply_xor_replacement(g2, eu, ev);
    auto covs2 = enumerate_cycle_covers(g2);

    // edge-set bitmasks over the spliced graph's edge order
    std::vector<Edge> e2list;
    for (const auto& [e, wt] : g2.w) e2list.push_back(e);
    auto eindex = [&](const Edge& e) {
      return std::lower_bound(e2list.begin(), e2list.end(), e) - e2list.begin();
    };
    std::vector<std::uint64_t> mask2(covs2.size(), 0);
    for (std::size_t ci = 0; ci < covs2.size(); ++ci)
      for (int u = 0; u < g2.n; ++u)
        mask2[ci] |= std::uint64_t{1} << eindex({u, covs2[ci].succ[u]});

    int u = eu.first, up = eu.second, v = ev.first, vp = ev.second;
    int av = n, cv = n + 2;
    std::uint64_t conn_u = (std::uint64_t{1} << eindex({u, av})) |
                           (std::uint64_t{1} << eindex({cv, up}));
    std::uint64_t conn_v = (std::uint64_t{1} << eindex({v, cv})) |
                           (std::uint64_t{1} << eindex({av, vp}));

    std::vector<char> consumed(covs2.size(), 0);
    for (const CycleCover& C : covs) {
      bool has_u = C.succ[u] == up, has_v = C.succ[v] == vp;
      if (has_u == has_v) continue;  // not in the replacement map's domain
      std::uint64_t rest = 0;
      for (int x = 0; x < n; ++x) {
        Edge e{x, C.succ[x]};
        if (e != eu && e != ev) rest |= std::uint64_t{1} << eindex(e);
      }
      std::uint64_t need = has_u ? conn_u : conn_v;
      std::uint64_t avoid = has_u ? conn_v : conn_u;
      FMatrix tot = zero2;
      for (std::size_t ci = 0; ci < covs2.size(); ++ci) {
        if ((rest & ~mask2[ci]) != 0) continue;
        if ((mask2[ci] & need) != need) continue;
        if ((mask2[ci] & avoid) != 0) continue;
        if (consumed[ci]) fail(Errc::internal, "xor splice: image cover claimed twice");
        consumed[ci] = 1;
        FMatrix sw = covs2[ci].weight;
        if (covs2[ci].sign < 0) sw = mat_scaled(sw, fv(s, -1));
        tot = mat_sum(tot, sw);
      }
      FMatrix sw = C.weight;
      if (C.sign < 0) sw = mat_scaled(sw, fv(s, -1));
      FMatrix expect = mat_scaled(sw, fv(s, 4));
      if (has_v) expect = mat_mul(expect, J);
      if (!(tot == expect))
        fail(Errc::internal, has_u ? "xor splice: u-side image total != 4*sgn(C)w(C)"
                                   : "xor splice: v-side image total != 4*sgn(C)w(C)*J2");
    }
    FMatrix leftover = zero2;
    for (std::size_t ci = 0; ci < covs2.size(); ++ci) {
      if (consumed[ci]) continue;
      FMatrix sw = covs2[ci].weight;
      if (covs2[ci].sign < 0) sw = mat_scaled(sw, fv(s, -1));
      leftover = mat_sum(leftover, sw);
    }
    if (!(leftover == zero2)) fail(Errc::internal, "xor splice: unmatched covers do not cancel");
    ++done;
  }
}

// ---------- compilation ----------

namespace {

Edge shift(const Edge& e, int base) { return {e.first + base, e.second + base}; }

// Shared signed cover weight of one placed fragment, read off its first
// cover with scalar weights 1 and marker weight -1.
int fragment_sign_weight(const GadgetFragment& frag) {
  auto c0 = first_cycle_cover(frag.n, frag.edges);
  if (!c0) fail(Errc::internal, "gadget fragment admits no cycle cover");
  int c = cover_cycle_count(*c0);
  int sw = ((frag.n - c) % 2 == 0) ? 1 : -1;
  if (frag.marker && (*c0)[frag.marker->first] == frag.marker->second) sw = -sw;
  return sw;
}

CompiledGraph place_gadgets(const CnfFormula& f, const FieldSpec& s, WeightMode mode) {
  if (s.is_prime_field() && s.p == 2)
    fail(Errc::bad_field, "graph compilation needs an odd prime field or the rationals: "
                          "over GF(2) the sign structure degenerates");
  CompiledGraph c;
  c.g.spec = s;
  c.g.mode = mode;
  FMatrix unit = c.g.unit_weight();
  FMatrix marker_wt = mode == WeightMode::det ? mat_scaled(unit, fv(s, -1)) : unit;

  int m = static_cast<int>(f.clauses.size());
  c.var_true_ext.resize(f.n_vars);
  c.var_false_ext.resize(f.n_vars);
  c.var_middle.resize(f.n_vars);
  c.var_base.resize(f.n_vars);
  c.clause_ext.resize(m);
  c.clause_base.resize(m);

  for (int v = 1; v <= f.n_vars; ++v) {
    int t = static_cast<int>(f.pos_occ[v - 1].size());
    int fo = static_cast<int>(f.neg_occ[v - 1].size());
    GadgetFragment frag = build_variable_gadget(t, fo);
    int base = c.g.n;
    c.g.n += frag.n;
    std::string tag = "var" + std::to_string(v);
    c.g.vertex_tag.insert(c.g.vertex_tag.end(), frag.n, tag);
    for (const Edge& e : frag.edges) c.g.add_edge(e.first + base, e.second + base, unit);
    for (std::size_t k = 0; k < frag.true_externals.size(); ++k) {
      Edge e = shift(frag.true_externals[k], base);
      c.var_true_ext[v - 1].push_back(e);
      c.g.externals.emplace_back(tag, "true", static_cast<int>(k), e);
    }
    for (std::size_t k = 0; k < frag.false_externals.size(); ++k) {
      Edge e = shift(frag.false_externals[k], base);
      c.var_false_ext[v - 1].push_back(e);
      c.g.externals.emplace_back(tag, "false", static_cast<int>(k), e);
    }
    c.var_middle[v - 1] = shift(*frag.middle, base);
    c.var_base[v - 1] = base;
    c.g.middles.emplace_back(tag, c.var_middle[v - 1]);
    c.blocks.emplace_back(base, std::move(frag));
  }
  for (int ci = 0; ci < m; ++ci) {
    const GadgetFragment& frag = clause_gadget();
    int base = c.g.n;
    c.g.n += frag.n;
    std::string tag = "clause" + std::to_string(ci + 1);
    c.g.vertex_tag.insert(c.g.vertex_tag.end(), frag.n, tag);
    for (const Edge& e : frag.edges)
      c.g.add_edge(e.first + base, e.second + base, e == *frag.marker ? marker_wt : unit);
    for (int k = 0; k < 3; ++k) {
      Edge e = shift(frag.externals[k], base);
      c.clause_ext[ci].push_back(e);
      c.g.externals.emplace_back(tag, "slot", k, e);
    }
    c.clause_base[ci] = base;
    c.g.markers.emplace_back(tag, shift(*frag.marker, base));
    c.blocks.emplace_back(base, frag);
  }
  c.n0 = c.g.n;

  // the shared signed cover weight of the whole gadget union, always read
  // from the determinant-mode scalar weights
  c.z = 1;
  for (const auto& [base, frag] : c.blocks) c.z *= fragment_sign_weight(frag);
  return c;
}

// Splits the middle edge of variable gadget 1 with a freshly appended
// pass-through vertex. The vertex has no self-loop, so every cover routes
// through it: each cover gains one vertex and no cycle, flipping the shared
// sign once.
void add_parity_vertex(CompiledGraph& c) {
  Edge mid = c.var_middle[0];
  FMatrix unit = c.g.unit_weight();
  int w = c.g.n;
  c.g.n += 1;
  c.g.vertex_tag.push_back("parity");
  c.g.w.erase(mid);
  c.g.add_edge(mid.first, w, unit);
  c.g.add_edge(w, mid.second, unit);
  std::erase_if(c.g.middles, [&](const auto& x) { return x.second == mid; });
  c.parity_vertex = true;
}

}  // namespace

CompiledGraph build_h0(const CnfFormula& f, const FieldSpec& s, WeightMode mode) {
  CompiledGraph c = place_gadgets(f, s, mode);
  if (c.z == -1) add_parity_vertex(c);
  return c;
}

CompiledGraph build_h(const CnfFormula& f, const FieldSpec& s, WeightMode mode) {
  CompiledGraph c = place_gadgets(f, s, mode);
  std::vector<int> used_t(f.n_vars, 0), used_f(f.n_vars, 0);
  int splice = 0;
  for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
    for (int k = 0; k < 3; ++k) {
      const Literal& l = f.clauses[ci][k];
      Edge ve = l.positive ? c.var_true_ext[l.var - 1][used_t[l.var - 1]++]
                           : c.var_false_ext[l.var - 1][used_f[l.var - 1]++];
      apply_xor_replacement(c.g, c.clause_ext[ci][k], ve, "xor" + std::to_string(++splice));
    }
  }
  if (c.z == -1) add_parity_vertex(c);
  return c;
}

GadgetGraph build_valiant_scalar(const CnfFormula& f, const FieldSpec& s) {
  return build_h(f, s, WeightMode::per).g;
}

// ---------- verification ----------

ConsistencyReport h0_consistent_total(const CnfFormula& f, const FieldSpec& s,
                                      const Guards& guards) {
  CompiledGraph c = build_h0(f, s, WeightMode::det);
  ConsistencyReport rep;
  rep.total = FMatrix::zero(s, 2, 2);
  rep.sat_count = count_sat_bruteforce(f);

  // the True branch is recognized by its first edge out of s; the two paths
  // leave s toward different first vertices, and the True path is laid first
  std::vector<int> true_succ(f.n_vars);
  for (int v = 0; v < f.n_vars; ++v)
    true_succ[v] = c.var_base[v] + c.blocks[v].second.edges[0].second;

  auto covers = enumerate_cycle_covers(c.g, guards);
  for (const CycleCover& cov : covers) {
    // assignment read off the variable branches
    std::uint32_t assign = 0;
    for (int v = 0; v < f.n_vars; ++v)
      if (cov.succ[c.var_base[v]] == true_succ[v]) assign |= 1u << v;
    bool consistent = true;
    for (std::size_t ci = 0; ci < f.clauses.size() && consistent; ++ci) {
      int used = 0, falsified = 0;
      for (int k = 0; k < 3; ++k) {
        const Edge& e = c.clause_ext[ci][k];
        if (cov.succ[e.first] == e.second) used |= 1 << k;
        const Literal& l = f.clauses[ci][k];
        bool val = (assign >> (l.var - 1)) & 1u;
        if (val != l.positive) falsified |= 1 << k;
      }
      consistent = used == falsified;
    }
    if (!consistent) continue;
    ++rep.consistent_covers;
    FMatrix sw = cov.weight;
    if (cov.sign < 0) sw = mat_scaled(sw, fv(s, -1));
    rep.total = mat_sum(rep.total, sw);
  }
  FMatrix expect = mat_scaled(FMatrix::identity(s, 2), fv(s, rep.sat_count));
  rep.pass = rep.consistent_covers == rep.sat_count && rep.total == expect;
  return rep;
}

FMatrix h0_block_determinant(const CompiledGraph& c, const Guards& guards) {
  int bd = c.g.block_dim();
  FMatrix acc = FMatrix::identity(c.g.spec, bd);
  for (std::size_t bi = 0; bi < c.blocks.size(); ++bi) {
    const auto& [base, frag] = c.blocks[bi];
    // the parity vertex belongs to variable gadget 1's block
    std::vector<int> verts(frag.n);
    for (int i = 0; i < frag.n; ++i) verts[i] = base + i;
    if (bi == 0 && c.parity_vertex) verts.push_back(c.n0);
    GadgetGraph local;
    local.spec = c.g.spec;
    local.mode = c.g.mode;
    local.n = static_cast<int>(verts.size());
    local.vertex_tag.assign(verts.size(), "block");
    std::map<int, int> idx;
    for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
    for (const auto& [e, wt] : c.g.w) {
      auto i = idx.find(e.first), j = idx.find(e.second);
      if (i != idx.end() && j != idx.end()) local.add_edge(i->second, j->second, wt);
    }
    FMatrix block = FMatrix::zero(c.g.spec, bd, bd);
    for (const CycleCover& cov : enumerate_cycle_covers(local, guards)) {
      FMatrix sw = cov.weight;
      if (c.g.mode == WeightMode::det && cov.sign < 0) sw = mat_scaled(sw, fv(c.g.spec, -1));
      block = mat_sum(block, sw);
    }
    acc = mat_mul(acc, block);
  }
  return acc;
}

ReductionReport verify_reduction(const CnfFormula& f, const FieldSpec& s, const DetOptions& opts) {
  ReductionReport rep;
  rep.s = count_sat_bruteforce(f);
  CompiledGraph c = build_h(f, s, WeightMode::det);
  rep.vertices = c.g.n;

  // the smallest self-contained instances compile to 25 vertices, so the
  // expansion guard is locally floored at 26
  DetOptions local = opts;
  local.guards.expansion = std::max<std::size_t>(local.guards.expansion, 26);
  AlgMatrix h = adjacency_block_matrix(c.g);
  AlgebraElement d = det_cayley_expansion(h, local);

  int m = static_cast<int>(f.clauses.size());
  FieldValue pow = FieldValue::one(s);
  for (int i = 0; i < 3 * m; ++i) pow *= fv(s, 4);
  rep.target = pow * fv(s, rep.s);

  // coords are row-major over the 2x2 matrix units
  const FieldValue& c00 = d.coord(0);
  const FieldValue& c01 = d.coord(1);
  const FieldValue& c10 = d.coord(2);
  const FieldValue& c11 = d.coord(3);
  rep.a = c00;
  rep.b = c01;
  if (!(c00 == c11) || !(c01 == c10)) {
    rep.pass = false;
    rep.note = "determinant is not a combination of the identity and the flip: got [" +
               c00.str() + " " + c01.str() + "; " + c10.str() + " " + c11.str() + "]";
    return rep;
  }
  FieldValue total = rep.a + rep.b;
  rep.pass = total == rep.target;
  if (!rep.pass)
    rep.note = "a + b = " + total.str() + " but the satisfying-assignment target is " +
               rep.target.str();
  return rep;
}

}  // namespace algdet
