#pragma once
#include <optional>
#include <string>

#include "algdet/reduction.hpp"
#include "algdet/structure.hpp"

namespace algdet {

// Line-oriented text codecs. Every writer produces the canonical serialization
// of its value: reading a writer's output and writing it again is
// byte-identical. Scalars use decimal integers (GF(p) residues reduced on
// read) or a/b fractions over the rationals; indices are 0-based.

// Algebra files. Full form:
//   algebra
//   field GF <p> | field QQ
//   dim <D>
//   basis <label_1> ... <label_D>
//   unit <D coords>
//   mul <i> <j> <D coords>     (D*D lines, row-major)
// or a single constructor line, optionally preceded by a field line:
//   preset matrix <d> | preset upper_triangular <d> | preset diagonal <d>
//   preset direct_sum <file> <file> | preset tensor <file> <file>
// `fallback` supplies the field when a preset file has no field line;
// `base_dir` anchors relative operand paths of direct_sum / tensor.
AlgebraPtr read_algebra(const std::string& text,
                        const std::optional<FieldSpec>& fallback = {},
                        const std::string& base_dir = ".");
AlgebraPtr read_algebra_file(const std::string& path,
                             const std::optional<FieldSpec>& fallback = {});
std::string write_algebra(const Algebra& a);  // always the full form

// Inline preset syntax used by the CLI: "preset:matrix:2",
// "preset:direct_sum:<file>:<file>". Anything else is read as a file path.
AlgebraPtr resolve_algebra_arg(const std::string& arg,
                               const std::optional<FieldSpec>& fallback = {});

// Matrix files: `matrix <n>` then n*n lines `entry <i> <j> <D coords>`.
AlgMatrix read_matrix(const std::string& text, const AlgebraPtr& alg);
std::string write_matrix(const AlgMatrix& m);

// Graph files: `graph <n> <det|per>`, a field line, `# gadget <tag> <first>
// <last>` vertex groups, `# external <owner> <side> <slot> <u> <v>`,
// `# marker <owner> <u> <v>`, `# middle <owner> <u> <v>` annotations, then
// `edge <u> <v> <w...>` lines (4 block entries row-major or 1 scalar) sorted
// by endpoint pair.
GadgetGraph read_graph(const std::string& text,
                       const std::optional<FieldSpec>& fallback = {});
std::string write_graph(const GadgetGraph& g);

// Structure override files: `radical <k>` then k coordinate rows, optionally
// `complement <k>` then k rows (either section may stand alone).
StructureOverride read_structure_override(const std::string& text, const FieldSpec& s,
                                          std::size_t dim);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace algdet
