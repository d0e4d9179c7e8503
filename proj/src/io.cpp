#include "algdet/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace algdet {
namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  fail(Errc::parse, "line " + std::to_string(line_no) + ": " + msg);
}

// Splits text into lines, dropping blank ones but keeping original numbering.
std::vector<std::pair<std::size_t, std::string>> lines_of(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.emplace_back(no, line);
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

long long to_int(const std::string& t, std::size_t line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    parse_fail(line_no, "expected an integer, got `" + t + "`");
  }
}

FieldSpec parse_field_tokens(const std::vector<std::string>& toks, std::size_t line_no) {
  if (toks.size() == 2 && toks[1] == "QQ") return FieldSpec::qq();
  if (toks.size() == 3 && toks[1] == "GF") return FieldSpec::gf(to_int(toks[2], line_no));
  parse_fail(line_no, "expected `field GF <p>` or `field QQ`");
}

std::string field_line(const FieldSpec& s) {
  return s.is_prime_field() ? "field GF " + std::to_string(s.p) : "field QQ";
}

std::vector<FieldValue> parse_coords(const FieldSpec& s,
                                     const std::vector<std::string>& toks, std::size_t from,
                                     std::size_t count, std::size_t line_no) {
  if (toks.size() != from + count)
    parse_fail(line_no, "expected " + std::to_string(count) + " coordinates, got " +
                            std::to_string(toks.size() - from));
  std::vector<FieldValue> v;
  v.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    try {
      v.push_back(FieldValue::parse(s, toks[from + i]));
    } catch (const Error& e) {
      parse_fail(line_no, e.what());
    }
  }
  return v;
}

std::string coords_str(const std::vector<FieldValue>& v) {
  std::string out;
  for (const FieldValue& x : v) {
    out += ' ';
    out += x.str();
  }
  return out;
}

AlgebraPtr read_preset_line(const std::vector<std::string>& toks, std::size_t line_no,
                            const std::optional<FieldSpec>& field, const std::string& base_dir) {
  auto need_field = [&]() -> const FieldSpec& {
    if (!field)
      parse_fail(line_no, "preset needs a field: add a `field` line or pass --field");
    return *field;
  };
  auto operand = [&](const std::string& p) {
    std::filesystem::path q(p);
    if (q.is_relative()) q = std::filesystem::path(base_dir) / q;
    return read_algebra_file(q.string(), field);
  };
  if (toks.size() == 3 && toks[1] == "matrix") return matrix_algebra(need_field(), to_int(toks[2], line_no));
  if (toks.size() == 3 && toks[1] == "upper_triangular")
    return upper_triangular(need_field(), to_int(toks[2], line_no));
  if (toks.size() == 3 && toks[1] == "diagonal")
    return diagonal(need_field(), to_int(toks[2], line_no));
  if (toks.size() == 4 && toks[1] == "direct_sum")
    return direct_sum(operand(toks[2]), operand(toks[3]));
  if (toks.size() == 4 && toks[1] == "tensor") return tensor_product(operand(toks[2]), operand(toks[3]));
  parse_fail(line_no, "unknown preset; expected matrix, upper_triangular, diagonal, "
                      "direct_sum, or tensor");
}

}  // namespace

AlgebraPtr read_algebra(const std::string& text, const std::optional<FieldSpec>& fallback,
                        const std::string& base_dir) {
  auto ls = lines_of(text);
  if (ls.empty()) fail(Errc::parse, "empty algebra file");
  std::size_t i = 0;
  std::optional<FieldSpec> field = fallback;

  auto head = tokens_of(ls[0].second);
  if (head[0] == "field") {
    field = parse_field_tokens(head, ls[0].first);
    ++i;
    if (i >= ls.size()) parse_fail(ls[0].first, "file ends after the field line");
    head = tokens_of(ls[i].second);
  }
  if (head[0] == "preset") {
    if (i + 1 != ls.size()) parse_fail(ls[i].first, "preset must be the last line");
    return read_preset_line(head, ls[i].first, field, base_dir);
  }

  if (head.size() != 1 || head[0] != "algebra")
    parse_fail(ls[i].first, "expected `algebra`, `preset ...`, or a `field` line first");
  auto next = [&]() -> const std::pair<std::size_t, std::string>& {
    if (++i >= ls.size()) parse_fail(ls.back().first, "unexpected end of algebra file");
    return ls[i];
  };

  {
    const auto& [no, line] = next();
    field = parse_field_tokens(tokens_of(line), no);
  }
  std::size_t dim = 0;
  {
    const auto& [no, line] = next();
    auto t = tokens_of(line);
    if (t.size() != 2 || t[0] != "dim") parse_fail(no, "expected `dim <D>`");
    long long d = to_int(t[1], no);
    if (d < 1) parse_fail(no, "dimension must be positive");
    dim = d;
  }
  std::vector<std::string> labels;
  {
    const auto& [no, line] = next();
    auto t = tokens_of(line);
    if (t.size() != dim + 1 || t[0] != "basis")
      parse_fail(no, "expected `basis` with " + std::to_string(dim) + " labels");
    labels.assign(t.begin() + 1, t.end());
  }
  std::vector<FieldValue> unit;
  {
    const auto& [no, line] = next();
    auto t = tokens_of(line);
    if (t.empty() || t[0] != "unit") parse_fail(no, "expected `unit <coords>`");
    unit = parse_coords(*field, t, 1, dim, no);
  }
  std::vector<FieldValue> table(dim * dim * dim, FieldValue::zero(*field));
  std::vector<char> seen(dim * dim, 0);
  for (std::size_t k = 0; k < dim * dim; ++k) {
    const auto& [no, line] = next();
    auto t = tokens_of(line);
    if (t.size() != 3 + dim || t[0] != "mul")
      parse_fail(no, "expected `mul <i> <j>` with " + std::to_string(dim) + " coordinates");
    long long i1 = to_int(t[1], no), j1 = to_int(t[2], no);
    if (i1 < 0 || j1 < 0 || i1 >= static_cast<long long>(dim) || j1 >= static_cast<long long>(dim))
      parse_fail(no, "mul indices out of range");
    if (seen[i1 * dim + j1]) parse_fail(no, "duplicate mul line");
    seen[i1 * dim + j1] = 1;
    auto coords = parse_coords(*field, t, 3, dim, no);
    for (std::size_t c = 0; c < dim; ++c) table[(i1 * dim + j1) * dim + c] = coords[c];
  }
  if (i + 1 != ls.size()) parse_fail(ls[i + 1].first, "trailing content after the mul table");
  return Algebra::make(*field, std::move(labels), std::move(table), std::move(unit));
}

AlgebraPtr read_algebra_file(const std::string& path, const std::optional<FieldSpec>& fallback) {
  return read_algebra(read_text_file(path), fallback,
                      std::filesystem::path(path).parent_path().string());
}

std::string write_algebra(const Algebra& a) {
  std::string out = "algebra\n" + field_line(a.field()) + "\n";
  out += "dim " + std::to_string(a.dim()) + "\n";
  out += "basis";
  for (const std::string& l : a.labels()) out += " " + l;
  out += "\nunit" + coords_str(a.unit_coords()) + "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      out += "mul " + std::to_string(i) + " " + std::to_string(j);
      for (std::size_t k = 0; k < a.dim(); ++k) {
        out += ' ';
        out += a.structure(i, j, k).str();
      }
      out += '\n';
    }
  return out;
}

AlgebraPtr resolve_algebra_arg(const std::string& arg, const std::optional<FieldSpec>& fallback) {
  if (arg.rfind("preset:", 0) == 0) {
    std::vector<std::string> toks{"preset"};
    std::size_t start = 7;
    while (start <= arg.size()) {
      std::size_t colon = arg.find(':', start);
      if (colon == std::string::npos) {
        toks.push_back(arg.substr(start));
        break;
      }
      toks.push_back(arg.substr(start, colon - start));
      start = colon + 1;
    }
    return read_preset_line(toks, 1, fallback, ".");
  }
  return read_algebra_file(arg, fallback);
}

AlgMatrix read_matrix(const std::string& text, const AlgebraPtr& alg) {
  auto ls = lines_of(text);
  if (ls.empty()) fail(Errc::parse, "empty matrix file");
  auto head = tokens_of(ls[0].second);
  if (head.size() != 2 || head[0] != "matrix") parse_fail(ls[0].first, "expected `matrix <n>`");
  long long n = to_int(head[1], ls[0].first);
  if (n < 1) parse_fail(ls[0].first, "matrix size must be positive");
  std::size_t dim = alg->dim();
  if (ls.size() != 1 + static_cast<std::size_t>(n) * n)
    fail(Errc::parse, "matrix file must have exactly " + std::to_string(n * n) + " entry lines");
  AlgMatrix m = AlgMatrix::zero(alg, n);
  std::vector<char> seen(n * n, 0);
  for (std::size_t k = 1; k < ls.size(); ++k) {
    const auto& [no, line] = ls[k];
    auto t = tokens_of(line);
    if (t.size() != 3 + dim || t[0] != "entry")
      parse_fail(no, "expected `entry <i> <j>` with " + std::to_string(dim) + " coordinates");
    long long i = to_int(t[1], no), j = to_int(t[2], no);
    if (i < 0 || j < 0 || i >= n || j >= n) parse_fail(no, "entry indices out of range");
    if (seen[i * n + j]) parse_fail(no, "duplicate entry line");
    seen[i * n + j] = 1;
    m.at(i, j) = AlgebraElement(alg, parse_coords(alg->field(), t, 3, dim, no));
  }
  return m;
}

std::string write_matrix(const AlgMatrix& m) {
  std::string out = "matrix " + std::to_string(m.n) + "\n";
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      out += "entry " + std::to_string(i) + " " + std::to_string(j) +
             coords_str(m.at(i, j).coords()) + "\n";
  return out;
}

GadgetGraph read_graph(const std::string& text, const std::optional<FieldSpec>& fallback) {
  auto ls = lines_of(text);
  if (ls.empty()) fail(Errc::parse, "empty graph file");
  auto head = tokens_of(ls[0].second);
  if (head.size() != 3 || head[0] != "graph")
    parse_fail(ls[0].first, "expected `graph <n> <det|per>`");
  GadgetGraph g;
  long long n = to_int(head[1], ls[0].first);
  if (n < 1) parse_fail(ls[0].first, "vertex count must be positive");
  g.n = static_cast<int>(n);
  if (head[2] == "det")
    g.mode = WeightMode::det;
  else if (head[2] == "per")
    g.mode = WeightMode::per;
  else
    parse_fail(ls[0].first, "mode must be det or per");

  std::optional<FieldSpec> field = fallback;
  g.vertex_tag.assign(g.n, "core");
  bool field_set = false;
  std::size_t weight_len = g.mode == WeightMode::det ? 4 : 1;
  for (std::size_t k = 1; k < ls.size(); ++k) {
    const auto& [no, line] = ls[k];
    auto t = tokens_of(line);
    if (t[0] == "field") {
      field = parse_field_tokens(t, no);
      field_set = true;
      g.spec = *field;
      continue;
    }
    auto vertex = [&](const std::string& s) {
      long long v = to_int(s, no);
      if (v < 0 || v >= n) parse_fail(no, "vertex index out of range");
      return static_cast<int>(v);
    };
    if (t[0] == "#") {
      if (t.size() == 5 && t[1] == "gadget") {
        int first = vertex(t[3]), last = vertex(t[4]);
        if (last < first) parse_fail(no, "empty gadget vertex range");
        for (int v = first; v <= last; ++v) g.vertex_tag[v] = t[2];
      } else if (t.size() == 7 && t[1] == "external") {
        g.externals.emplace_back(t[2], t[3], static_cast<int>(to_int(t[4], no)),
                                 Edge{vertex(t[5]), vertex(t[6])});
      } else if (t.size() == 5 && t[1] == "marker") {
        g.markers.emplace_back(t[2], Edge{vertex(t[3]), vertex(t[4])});
      } else if (t.size() == 5 && t[1] == "middle") {
        g.middles.emplace_back(t[2], Edge{vertex(t[3]), vertex(t[4])});
      }
      // other comments are ignored
      continue;
    }
    if (t[0] == "edge") {
      if (!field) parse_fail(no, "edge before any field line (and no fallback field given)");
      if (t.size() != 3 + weight_len)
        parse_fail(no, "expected `edge <u> <v>` with " + std::to_string(weight_len) +
                           " weight entries");
      int u = vertex(t[1]), v = vertex(t[2]);
      auto coords = parse_coords(*field, t, 3, weight_len, no);
      FMatrix wt = FMatrix::zero(*field, g.block_dim(), g.block_dim());
      wt.a = coords;
      if (g.w.count({u, v})) parse_fail(no, "duplicate edge");
      g.spec = *field;
      g.add_edge(u, v, std::move(wt));
      continue;
    }
    parse_fail(no, "expected a field, #-comment, or edge line");
  }
  if (!field_set && !fallback) fail(Errc::parse, "graph file has no field line");
  g.spec = *field;
  return g;
}

std::string write_graph(const GadgetGraph& g) {
  std::string out = "graph " + std::to_string(g.n) + " " +
                    (g.mode == WeightMode::det ? "det" : "per") + "\n";
  out += field_line(g.spec) + "\n";
  for (int v = 0; v < g.n;) {
    int first = v;
    const std::string& tag = g.vertex_tag[v];
    while (v < g.n && g.vertex_tag[v] == tag) ++v;
    out += "# gadget " + tag + " " + std::to_string(first) + " " + std::to_string(v - 1) + "\n";
  }
  for (const auto& [owner, side, slot, e] : g.externals)
    out += "# external " + owner + " " + side + " " + std::to_string(slot) + " " +
           std::to_string(e.first) + " " + std::to_string(e.second) + "\n";
  for (const auto& [owner, e] : g.markers)
    out += "# marker " + owner + " " + std::to_string(e.first) + " " +
           std::to_string(e.second) + "\n";
  for (const auto& [owner, e] : g.middles)
    out += "# middle " + owner + " " + std::to_string(e.first) + " " +
           std::to_string(e.second) + "\n";
  for (const auto& [e, wt] : g.w) {
    out += "edge " + std::to_string(e.first) + " " + std::to_string(e.second);
    out += coords_str(wt.a) + "\n";
  }
  return out;
}

StructureOverride read_structure_override(const std::string& text, const FieldSpec& s,
                                          std::size_t dim) {
  auto ls = lines_of(text);
  StructureOverride ov;
  std::size_t i = 0;
  while (i < ls.size()) {
    const auto& [no, line] = ls[i];
    auto t = tokens_of(line);
    std::optional<FMatrix>* dst = nullptr;
    if (t.size() == 2 && t[0] == "radical")
      dst = &ov.radical_rows;
    else if (t.size() == 2 && t[0] == "complement")
      dst = &ov.complement_rows;
    else
      parse_fail(no, "expected `radical <k>` or `complement <k>`");
    if (dst->has_value()) parse_fail(no, "duplicate section");
    long long k = to_int(t[1], no);
    if (k < 0 || i + 1 + static_cast<std::size_t>(k) > ls.size())
      parse_fail(no, "section declares more rows than the file holds");
    FMatrix rows = FMatrix::zero(s, k, dim);
    for (long long r = 0; r < k; ++r) {
      const auto& [rno, rline] = ls[i + 1 + r];
      auto coords = parse_coords(s, tokens_of(rline), 0, dim, rno);
      for (std::size_t c = 0; c < dim; ++c) rows.at(r, c) = coords[c];
    }
    *dst = std::move(rows);
    i += 1 + k;
  }
  return ov;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(Errc::parse, "cannot write " + path);
}

}  // namespace algdet
