// krtorus: command-line front end for the torus Reeb-graph pipeline.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "krtorus/error.hpp"
#include "krtorus/grid.hpp"
#include "krtorus/homology.hpp"
#include "krtorus/pipeline.hpp"
#include "krtorus/reeb.hpp"
#include "krtorus/report_json.hpp"
#include "krtorus/surface.hpp"

using namespace krtorus;

namespace {

struct Options {
  std::string input = "-";
  std::string format = "text";
  std::string out;
  std::string atoms;
  std::string matrix;
  std::string preset;
  int grid = 16;
  std::optional<std::uint32_t> random_seed;
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::kParse, "cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) fail(ErrorCode::kParse, "cannot write " + opt.out);
  out << text;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed,
                    const std::string& command) {
  for (const char* f : allowed)
    if (opt.format == f) return;
  fail(ErrorCode::kParse, "format '" + opt.format + "' is not available for " + command);
}

std::string kinds_text(const ReebNode& node) {
  std::string out;
  for (std::size_t i = 0; i < node.kinds.size(); ++i) {
    out += (i ? "," : "") + std::string(vertex_kind_name(node.kinds[i].kind));
    if (node.kinds[i].multiplicity > 1) out += "(" + std::to_string(node.kinds[i].multiplicity) + ")";
  }
  return out;
}

int cmd_validate(const Options& opt) {
  require_format(opt, {"text", "json"}, "validate");
  const SurfaceField s = load_surface_text(read_input(opt.input));
  const SurfaceTopology topo = validate_closed_orientable(s);
  if (topo.genus != 1)
    fail(ErrorCode::kNotTorus, "surface has genus " + std::to_string(topo.genus) + ", not a torus");
  std::array<int, 4> counts{};
  for (const VertexClass& c : classify_all(s)) ++counts[static_cast<int>(c.kind)];
  if (opt.format == "json") {
    Json doc{{"vertices", s.vertex_count()},
             {"triangles", s.triangle_count()},
             {"edges", s.edge_count()},
             {"chi", topo.chi},
             {"genus", topo.genus},
             {"minima", counts[0]},
             {"saddles", counts[2]},
             {"maxima", counts[3]},
             {"total_index", total_index(s)}};
    emit(opt, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "vertices " << s.vertex_count() << "\ntriangles " << s.triangle_count() << "\nchi "
        << topo.chi << "\ngenus " << topo.genus << "\nminima " << counts[0] << "\nsaddles "
        << counts[2] << "\nmaxima " << counts[3] << "\n";
    emit(opt, out.str());
  }
  return 0;
}

int cmd_reeb(const Options& opt) {
  require_format(opt, {"text", "json", "dot"}, "reeb");
  const SurfaceField s = load_surface_text(read_input(opt.input));
  validate_closed_orientable(s);
  const ReebGraph g = compute_reeb(s);
  if (opt.format == "dot") {
    emit(opt, reeb_to_dot(g));
  } else if (opt.format == "json") {
    Json nodes = Json::array(), edges = Json::array();
    for (int v = 0; v < g.node_count(); ++v)
      nodes.push_back({{"id", v},
                       {"level", format_scalar(g.nodes[v].level)},
                       {"vertices", g.nodes[v].vertices},
                       {"kinds", kinds_text(g.nodes[v])},
                       {"index_sum", g.nodes[v].index_sum()}});
    for (const ReebEdge& e : g.edges) edges.push_back({e.lower, e.upper});
    Json doc{{"nodes", nodes}, {"edges", edges}, {"b1", g.betti1()}, {"is_tree", is_tree(g)}};
    emit(opt, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (int v = 0; v < g.node_count(); ++v)
      out << "node " << v << " level " << format_scalar(g.nodes[v].level) << " "
          << kinds_text(g.nodes[v]) << "\n";
    for (const ReebEdge& e : g.edges) out << "edge " << e.lower << " " << e.upper << "\n";
    out << "b1 " << g.betti1() << "\ntree " << (is_tree(g) ? "yes" : "no") << "\n";
    emit(opt, out.str());
  }
  return 0;
}

std::string report_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "surface: " << r.vertices << " vertices, " << r.triangles << " triangles, chi "
      << r.chi << ", genus " << r.genus << "\n";
  out << "reeb: " << r.reeb_nodes << " nodes, " << r.reeb_edges << " edges, tree\n";
  out << "special node " << r.special_node << " at level " << format_scalar(r.special_level)
      << "\n";
  out << "cells: " << r.zero_cells << " " << r.one_cells << " " << r.two_cells << "\n";
  out << "symmetry: order " << r.order << ", n " << r.n << ", m " << r.m << ", r " << r.r
      << "\n";
  if (!r.realized) out << "warning: some symmetries are not realized by the field values\n";
  for (const auto& row : r.orbit_table)
    out << "  D_" << row[0] << row[1] << row[2] << " = cell " << row[3] << "\n";
  out << "pi1: " << r.expr.to_string() << "\n";
  return out.str();
}

int cmd_analyze(const Options& opt) {
  require_format(opt, {"text", "json"}, "analyze");
  const AnalysisReport r = analyze(load_surface_text(read_input(opt.input)));
  emit(opt, opt.format == "json" ? report_to_json(r).dump(2) + "\n" : report_text(r));
  return 0;
}

int cmd_verify(const Options& opt) {
  require_format(opt, {"text", "json"}, "verify");
  if (opt.atoms.empty()) fail(ErrorCode::kParse, "verify needs --atoms");
  const std::string text = read_input(opt.input);
  const auto first = text.find_first_not_of(" \t\r\n");
  AnalysisReport report;
  if (first != std::string::npos && text[first] == '{') {
    try {
      report = report_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::kParse, std::string("malformed report: ") + e.what());
    }
  } else {
    report = analyze(load_surface_text(text));
  }
  const VerificationRecord rec = verify_extension(report, parse_atoms(opt.atoms));
  if (opt.format == "json") {
    emit(opt, verification_to_json(rec).dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "W = (" << rec.atoms << ") wr[Z_" << rec.n << " x Z_" << rec.nm << "] Z^2\n";
    for (const auto& c : rec.checks) {
      out << "(" << c.name << ") " << (c.passed ? "PASS" : "FAIL") << " " << c.title << "\n";
      if (!c.passed) out << "    " << c.detail << "\n";
    }
    out << "kernel " << rec.kernel_size << " expected " << rec.expected_kernel_size << "\n";
    emit(opt, out.str());
  }
  if (!rec.passed()) {
    for (const auto& c : rec.checks)
      if (!c.passed) fail(ErrorCode::kVerificationFailed, "check (" + c.name + ") failed: " + c.detail);
  }
  return 0;
}

int cmd_snf(const Options& opt) {
  require_format(opt, {"text", "json"}, "snf");
  if (opt.matrix.empty()) fail(ErrorCode::kParse, "snf needs --matrix");
  const IntMatrix a = IntMatrix::parse(opt.matrix);
  const SnfResult res = smith_normal_form(a);
  std::string diag;
  const auto d = res.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) diag += (i ? "," : "") + d[i].str();
  if (opt.format == "json") {
    Json doc{{"D", res.D.to_string()},  {"U", res.U.to_string()}, {"V", res.V.to_string()},
             {"diagonal", "diag(" + diag + ")"}, {"rank", res.rank}};
    emit(opt, doc.dump(2) + "\n");
  } else {
    emit(opt, "D=diag(" + diag + ")\nU=" + res.U.to_string() + "\nV=" + res.V.to_string() + "\n");
  }
  return 0;
}

int cmd_gen(const Options& opt) {
  require_format(opt, {"text"}, "gen");
  if (opt.random_seed) {
    if (!opt.preset.empty()) fail(ErrorCode::kParse, "use either a preset or --random");
    emit(opt, random_tree_field(opt.grid, *opt.random_seed));
    return 0;
  }
  const auto preset = preset_from_name(opt.preset);
  if (!preset) fail(ErrorCode::kParse, "unknown preset '" + opt.preset + "'");
  emit(opt, generate_preset(*preset, opt.grid));
  return 0;
}

void report_error(const Options& opt, ErrorCode code, const std::string& message) {
  if (opt.format == "json") {
    std::cerr << error_to_json(Error(code, message)).dump() << "\n";
  } else {
    std::cerr << "krtorus: error[" << error_code_name(code) << "]: " << message << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Reeb graphs, symmetries and orbit groups of functions on the torus"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "json", "dot"};

  auto add_common = [&](CLI::App* sub, bool has_input) {
    if (has_input) sub->add_option("input", opt.input, "torus-field file, - for stdin");
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember(formats));
    sub->add_option("--out", opt.out, "write output to PATH");
  };
  auto* validate = app.add_subcommand("validate", "check a torus-field file");
  add_common(validate, true);
  auto* reeb = app.add_subcommand("reeb", "Kronrod-Reeb graph");
  add_common(reeb, true);
  auto* analyze_cmd = app.add_subcommand("analyze", "full analysis report");
  add_common(analyze_cmd, true);
  auto* verify = app.add_subcommand("verify", "check the extension with concrete atoms");
  add_common(verify, true);
  verify->add_option("--atoms", opt.atoms, "atom groups, e.g. Z2,Z3")->required();
  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  add_common(snf, false);
  snf->add_option("--matrix", opt.matrix, "rows separated by ';', e.g. \"2,2;0,4\"")->required();
  auto* gen = app.add_subcommand("gen", "write a sampled grid field");
  add_common(gen, false);
  gen->add_option("name", opt.preset, "two-cell, z2-sym, z2xz2-sym or cyclic-height");
  gen->add_option("--preset", opt.preset, "preset name");
  gen->add_option("--grid", opt.grid, "grid size N")->capture_default_str();
  gen->add_option("--random", opt.random_seed, "random tree field with this seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error(opt, ErrorCode::kParse, e.what());
    return 1;
  }

  try {
    if (*validate) return cmd_validate(opt);
    if (*reeb) return cmd_reeb(opt);
    if (*analyze_cmd) return cmd_analyze(opt);
    if (*verify) return cmd_verify(opt);
    if (*snf) return cmd_snf(opt);
    if (*gen) return cmd_gen(opt);
  } catch (const Error& e) {
    report_error(opt, e.code(), e.what());
    return is_input_rejection(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    report_error(opt, ErrorCode::kInternal, e.what());
    return 2;
  }
  return 2;
}
