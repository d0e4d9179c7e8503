#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "algdet/determinant.hpp"

namespace algdet {

// ---------- 3-CNF formulas ----------

struct Literal {
  int var = 0;  // 1-based
  bool positive = true;
};

// Clauses keep input order; occurrence sites are (clause, slot) pairs in
// input order, indexed by var - 1.
struct CnfFormula {
  int n_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;
  std::vector<std::vector<std::pair<int, int>>> pos_occ, neg_occ;
};

// Literals as signed 1-based integers, e.g. {{1, -2, 2}}.
CnfFormula make_cnf(int n_vars, const std::vector<std::array<int, 3>>& clauses);
// DIMACS CNF. Clauses of 1-2 literals are padded by repeating the last
// literal (count-preserving); more than 3 literals is an error.
CnfFormula parse_dimacs(const std::string& text);
long long count_sat_bruteforce(const CnfFormula& f);

// ---------- weighted digraphs ----------

using Edge = std::pair<int, int>;

enum class WeightMode { det, per };

// Directed graph with one weight block per edge: 2x2 over the field in
// determinant mode, 1x1 in permanent (scalar) mode. Edge keys are unique, so
// the graph is multi-edge-free by construction.
struct GadgetGraph {
  FieldSpec spec{};
  WeightMode mode = WeightMode::det;
  int n = 0;
  std::map<Edge, FMatrix> w;

  // annotations carried into graph files
  std::vector<std::string> vertex_tag;  // owning gadget per vertex
  std::vector<std::tuple<std::string, std::string, int, Edge>>
      externals;  // (owner, side "true"/"false"/"slot", slot, edge); unconsumed only
  std::vector<std::pair<std::string, Edge>> markers;  // clause marker edges
  std::vector<std::pair<std::string, Edge>> middles;  // variable middle edges

  int block_dim() const { return mode == WeightMode::det ? 2 : 1; }
  FMatrix unit_weight() const { return FMatrix::identity(spec, block_dim()); }
  void add_edge(int u, int v, FMatrix wt);
};

struct CycleCover {
  std::vector<int> succ;
  int cycles = 0;
  int sign = 1;    // (-1)^(n - cycles)
  FMatrix weight;  // product of edge weights in vertex order
};

// Successor maps realized by the edge set, in lexicographic order.
std::vector<std::vector<int>> cycle_cover_successors(int n, const std::vector<Edge>& edges);
std::optional<std::vector<int>> first_cycle_cover(int n, const std::vector<Edge>& edges);
int cover_cycle_count(const std::vector<int>& succ);
std::vector<CycleCover> enumerate_cycle_covers(const GadgetGraph& g, const Guards& guards = {});

// Adjacency of a determinant-mode graph as a matrix over the 2x2 matrix
// algebra, and of a permanent-mode graph as a scalar matrix.
AlgMatrix adjacency_block_matrix(const GadgetGraph& g);
FMatrix adjacency_scalar_matrix(const GadgetGraph& g);

// ---------- gadget fragments (local vertex numbering) ----------

struct GadgetFragment {
  int n = 0;
  std::vector<Edge> edges;           // construction order
  std::vector<Edge> true_externals;  // variable gadget only
  std::vector<Edge> false_externals;
  std::vector<Edge> externals;  // clause gadget slots 0..2
  std::optional<Edge> marker;   // clause gadget
  std::optional<Edge> middle;   // variable gadget
};

// Vertices: 0 = s, 1 = s', then the True-side internals, then the False-side
// internals. Contract (exactly two covers, odd cycle counts, equal signs,
// each external in exactly one cover) is re-verified on every build.
GadgetFragment build_variable_gadget(int t, int f);

// The shipped 5-vertex clause gadget, verified once on first use.
const GadgetFragment& clause_gadget();
// Throws when any of the clause-gadget contract clauses fails: no cover uses
// all three externals; each proper subset of externals is used by exactly one
// of the 7 covers; covers have 1 or 2 cycles with the marker edge in exactly
// the 2-cycle ones; marker weight -1 equalizes all signed cover weights.
void verify_clause_gadget(const GadgetFragment& g);
// Deterministic smallest-first exhaustive search; reproduces clause_gadget()
// at budget 5. Throws when the budget is exhausted.
GadgetFragment synthesize_clause_gadget(int vertex_budget);

// ---------- XOR replacement ----------

FMatrix xor_mat_x(const FieldSpec& s);  // [[1,0],[0,-1]]
FMatrix xor_mat_y(const FieldSpec& s);  // [[0,-1],[-1,0]]
FMatrix xor_mat_z(const FieldSpec& s);  // [[0,-1],[1,0]]
FMatrix xor_mat_j2(const FieldSpec& s);  // [[0,1],[1,0]]
// 4x4 block adjacency of the XOR gadget over vertices (a,b,c,d).
std::array<std::array<FMatrix, 4>, 4> xor_block_rows(const FieldSpec& s);
// Scalar shadow: X, Y, Z read as 1, signs and the constants 2, 3 kept.
FMatrix xor_scalar_rows(const FieldSpec& s);

// Splices the XOR gadget across edges e_u = (u,u') and e_v = (v,v'): deletes
// both, appends vertices a,b,c,d, installs the gadget's internal weights, and
// connects (u,a), (c,u'), (v,c), (a,v') with identity weight. Both edges must
// carry identity weight and have four distinct endpoints.
void apply_xor_replacement(GadgetGraph& g, Edge e_u, Edge e_v,
                           const std::string& tag = "xor");

// Determinant identities of the XOR block matrix and the permanent
// identities of its scalar shadow; throws on any mismatch.
void check_xor_minor_identities(const FieldSpec& s);
// Replacement bookkeeping on seeded random hosts (<= 5 vertices): image
// covers of an edge-using cover total 4*sgn(C)w(C) on the u side and
// 4*sgn(C)w(C)*J2 on the v side, and all unmatched covers cancel.
void check_xor_replacement_totals(const FieldSpec& s, std::uint64_t seed, int hosts);

// ---------- formula compilation ----------

struct CompiledGraph {
  GadgetGraph g;
  // per variable (0-based): external edges still keyed by their original
  // endpoints, the middle edge, and the gadget's base vertex
  std::vector<std::vector<Edge>> var_true_ext, var_false_ext;
  std::vector<Edge> var_middle;
  std::vector<int> var_base;
  std::vector<std::vector<Edge>> clause_ext;  // per clause, slots 0..2
  std::vector<int> clause_base;
  // placed fragments (variables then clauses) with their base vertex
  std::vector<std::pair<int, GadgetFragment>> blocks;
  int z = 1;  // shared signed cover weight of the gadget union, pre-normalization
  bool parity_vertex = false;
  int n0 = 0;  // vertex count before XOR blocks
};

// Disjoint union of all variable and clause gadgets (no XOR splices), with
// the parity vertex inserted when the shared signed cover weight is -1.
CompiledGraph build_h0(const CnfFormula& f, const FieldSpec& s, WeightMode mode);
// Full compilation: gadget union, one XOR splice per literal slot (clause
// external paired with the next unused variable external on the literal's
// side), then parity normalization.
CompiledGraph build_h(const CnfFormula& f, const FieldSpec& s, WeightMode mode);
// Permanent-mode compilation of the same topology, scalar weights.
GadgetGraph build_valiant_scalar(const CnfFormula& f, const FieldSpec& s);

// Sum of sgn(C)w(C) over the consistent covers of the gadget union: covers
// whose every clause uses exactly the external subset of its falsified
// literals under the assignment read off the variable branches. Expected
// total S * I2 with exactly S consistent covers.
struct ConsistencyReport {
  FMatrix total;
  long long consistent_covers = 0;
  long long sat_count = 0;
  bool pass = false;
};
ConsistencyReport h0_consistent_total(const CnfFormula& f, const FieldSpec& s,
                                      const Guards& guards = {});

// Product over gadget blocks of the block's total signed cover weight; equals
// det of the gadget union (blocks are disconnected).
FMatrix h0_block_determinant(const CompiledGraph& c, const Guards& guards = {});

struct ReductionReport {
  long long s = 0;          // satisfying assignments
  FieldValue a, b;          // det(H) = a*I2 + b*J2
  FieldValue target;        // 4^(3m) * S in the field
  int vertices = 0;
  bool pass = false;
  std::string note;
};
// Compiles the determinant-mode graph, evaluates its determinant with the
// subset-expansion oracle, checks the a*I2 + b*J2 form and a + b against
// 4^(3m) * S.
ReductionReport verify_reduction(const CnfFormula& f, const FieldSpec& s,
                                 const DetOptions& opts = {});

}  // namespace algdet
