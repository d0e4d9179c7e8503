#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <random>

#include "algdet/io.hpp"
#include "doctest.h"

using namespace algdet;

namespace {

const FieldSpec g7 = FieldSpec::gf(7);

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("algdet_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::string p = (path / name).string();
    write_text_file(p, text);
    return p;
  }
};

}  // namespace

TEST_CASE("algebra files round-trip byte-identically") {
  for (const AlgebraPtr& a :
       {matrix_algebra(g7, 2), upper_triangular(FieldSpec::gf(5), 3), diagonal(g7, 2),
        field_algebra(FieldSpec::qq()), tensor_product(diagonal(g7, 2), diagonal(g7, 2))}) {
    std::string text = write_algebra(*a);
    AlgebraPtr back = read_algebra(text);
    CHECK(back->same_as(*a));
    CHECK(write_algebra(*back) == text);
  }
}

TEST_CASE("preset algebra files") {
  CHECK(read_algebra("field GF 7\npreset matrix 2\n")->same_as(*matrix_algebra(g7, 2)));
  CHECK(read_algebra("field QQ\npreset diagonal 3\n")->same_as(*diagonal(FieldSpec::qq(), 3)));
  // The fallback field fills in when the file has no field line.
  CHECK(read_algebra("preset upper_triangular 2\n", FieldSpec::gf(5))
            ->same_as(*upper_triangular(FieldSpec::gf(5), 2)));
  CHECK_THROWS_AS((void)read_algebra("preset matrix 2\n"), Error);  // no field anywhere

  // Operand files referenced relative to the preset file's directory.
  TempDir tmp;
  tmp.file("d2.alg", "field GF 7\npreset diagonal 2\n");
  tmp.file("u2.alg", "field GF 7\npreset upper_triangular 2\n");
  tmp.file("sum.alg", "preset direct_sum d2.alg u2.alg\n");
  AlgebraPtr s = read_algebra_file((tmp.path / "sum.alg").string());
  CHECK(s->same_as(*direct_sum(diagonal(g7, 2), upper_triangular(g7, 2))));
  tmp.file("tp.alg", "preset tensor d2.alg d2.alg\n");
  CHECK(read_algebra_file((tmp.path / "tp.alg").string())
            ->same_as(*tensor_product(diagonal(g7, 2), diagonal(g7, 2))));
}

TEST_CASE("inline preset arguments") {
  CHECK(resolve_algebra_arg("preset:matrix:2", g7)->same_as(*matrix_algebra(g7, 2)));
  CHECK(resolve_algebra_arg("preset:diagonal:1", g7)->dim() == 1);
  TempDir tmp;
  std::string path = tmp.file("m2.alg", write_algebra(*matrix_algebra(g7, 2)));
  CHECK(resolve_algebra_arg(path)->same_as(*matrix_algebra(g7, 2)));
  CHECK_THROWS_AS((void)resolve_algebra_arg("preset:matrix:2"), Error);  // field needed
  CHECK_THROWS_AS((void)resolve_algebra_arg("preset:nonsense:1", g7), Error);
}

TEST_CASE("matrix files round-trip") {
  AlgebraPtr u2 = upper_triangular(g7, 2);
  std::mt19937_64 rng(5150);
  AlgMatrix m = AlgMatrix::zero(u2, 3);
  for (auto& e : m.e) {
    std::vector<FieldValue> c(3);
    for (auto& x : c) x = FieldValue::of_int(g7, (long long)(rng() % 7));
    e = AlgebraElement(u2, std::move(c));
  }
  std::string text = write_matrix(m);
  AlgMatrix back = read_matrix(text, u2);
  CHECK(back.n == 3);
  for (std::size_t i = 0; i < 9; ++i) CHECK(back.e[i] == m.e[i]);
  CHECK(write_matrix(back) == text);

  CHECK_THROWS_AS((void)read_matrix("matrix 2\nentry 0 0 1 0 0\n", u2), Error);  // short
  CHECK_THROWS_AS((void)read_matrix(text + "entry 0 0 1 0 0\n", u2), Error);     // extra
  std::string dup = "matrix 1\nentry 0 0 1 0 0\nentry 0 0 1 0 0\n";
  CHECK_THROWS_AS((void)read_matrix(dup, u2), Error);
  CHECK_THROWS_AS((void)read_matrix("matrix 1\nentry 0 1 1 0 0\n", u2), Error);  // range
}

TEST_CASE("graph files round-trip with annotations") {
  CnfFormula f = make_cnf(2, {{1, -2, 2}});
  for (WeightMode mode : {WeightMode::det, WeightMode::per}) {
    CompiledGraph c = build_h(f, g7, mode);
    std::string text = write_graph(c.g);
    GadgetGraph back = read_graph(text);
    CHECK(back.n == c.g.n);
    CHECK(back.mode == c.g.mode);
    CHECK(back.w.size() == c.g.w.size());
    for (const auto& [e, wt] : c.g.w) {
      REQUIRE(back.w.count(e));
      CHECK(back.w.at(e) == wt);
    }
    CHECK(back.vertex_tag == c.g.vertex_tag);
    CHECK(back.externals == c.g.externals);
    CHECK(back.markers == c.g.markers);
    CHECK(back.middles == c.g.middles);
    CHECK(write_graph(back) == text);
  }

  // The determinant of a written-then-reread graph matches the original.
  CompiledGraph c = build_h0(f, g7, WeightMode::det);
  GadgetGraph back = read_graph(write_graph(c.g));
  CHECK(det_cayley_expansion(adjacency_block_matrix(back)) ==
        det_cayley_expansion(adjacency_block_matrix(c.g)));
}

TEST_CASE("graph files need a field") {
  CnfFormula f = make_cnf(1, {{1, 1, 1}});
  CompiledGraph c = build_h0(f, g7, WeightMode::det);
  std::string text = write_graph(c.g);
  // Strip the field line; reading then requires the fallback.
  std::string stripped;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol - pos);
    if (line.rfind("field", 0) != 0) stripped += line + "\n";
    pos = eol + 1;
  }
  CHECK_THROWS_AS((void)read_graph(stripped), Error);
  GadgetGraph back = read_graph(stripped, g7);
  CHECK(back.spec.p == 7);
  CHECK(back.w.size() == c.g.w.size());
}

TEST_CASE("structure override files") {
  std::string text = "radical 1\n0 1 0\n";
  StructureOverride ov = read_structure_override(text, g7, 3);
  REQUIRE(ov.radical_rows.has_value());
  CHECK(ov.radical_rows->rows == 1);
  CHECK(ov.radical_rows->at(0, 1) == FieldValue::one(g7));
  CHECK(!ov.complement_rows.has_value());

  StructureOverride both =
      read_structure_override("radical 1\n0 1 0\ncomplement 2\n1 0 0\n0 0 1\n", g7, 3);
  REQUIRE(both.complement_rows.has_value());
  CHECK(both.complement_rows->rows == 2);

  CHECK_THROWS_AS((void)read_structure_override("radical 2\n0 1 0\n", g7, 3), Error);
  CHECK_THROWS_AS((void)read_structure_override("radical 1\n0 1\n", g7, 3), Error);
  CHECK_THROWS_AS((void)read_structure_override("junk 1\n0 1 0\n", g7, 3), Error);
  CHECK_THROWS_AS((void)read_structure_override("radical 1\n0 1 0\nradical 1\n0 1 0\n", g7, 3),
                  Error);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    (void)read_algebra("algebra\nfield GF 7\ndim x\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    (void)read_matrix("matrix 1\nentry 0 0\n", field_algebra(g7));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS((void)read_graph("graph 2 neither\n"), Error);
  CHECK_THROWS_AS((void)read_text_file("/nonexistent/path/file.txt"), Error);
}

TEST_CASE("full-form algebra validation") {
  AlgebraPtr d2 = diagonal(g7, 2);
  std::string good = write_algebra(*d2);
  // Tamper: duplicate mul line index is rejected.
  std::string dup = good + "mul 0 0 1 0\n";
  CHECK_THROWS_AS((void)read_algebra(dup), Error);
  // Tampered structure constants that break associativity are rejected by
  // construction even when the file shape is valid.
  std::string text =
      "algebra\nfield GF 7\ndim 2\nbasis 1 x\nunit 1 0\n"
      "mul 0 0 1 0\nmul 0 1 0 1\nmul 1 0 0 1\nmul 1 1 0 0\n";
  AlgebraPtr nil = read_algebra(text);  // x^2 = 0: the dual numbers, valid
  CHECK(nil->dim() == 2);
  CHECK(nil->commutative());
  std::string broken =
      "algebra\nfield GF 7\ndim 2\nbasis 1 x\nunit 1 0\n"
      "mul 0 0 1 0\nmul 0 1 0 1\nmul 1 0 1 0\nmul 1 1 0 0\n";
  CHECK_THROWS_AS((void)read_algebra(broken), Error);
}
