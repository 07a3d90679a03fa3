// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "krtorus/error.hpp"
#include "krtorus/grid.hpp"
#include "krtorus/homology.hpp"
#include "krtorus/partition.hpp"
#include "krtorus/pipeline.hpp"
#include "krtorus/reeb.hpp"
#include "krtorus/report_json.hpp"
#include "krtorus/symmetry.hpp"
#include "krtorus/wreath.hpp"
#include "oracles.hpp"

using namespace krtorus;

namespace {

constexpr int kGrid = 16;
constexpr int kRandomFields = 20;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (cond || !ok) {
      ok = ok && cond;
      return;
    }
    ok = false;
    detail << what;
  }
};

struct Stages {
  std::string name;
  SurfaceField surface;
  ReebGraph graph;
  std::vector<int> candidates;
  CellPartition partition;
  SymmetryGroup group;
};

Stages run_stages(std::string name, const std::string& text) {
  Stages st;
  st.name = std::move(name);
  st.surface = load_surface_text(text);
  st.graph = compute_reeb(st.surface);
  st.candidates = special_vertex_candidates(st.surface, st.graph);
  st.partition = build_partition(st.surface, st.graph, find_special_vertex(st.surface, st.graph));
  st.group = analyze_symmetry(st.partition);
  return st;
}

const std::vector<Preset>& tree_presets() {
  static const std::vector<Preset> p{Preset::kTwoCell, Preset::kZ2Sym, Preset::kZ2xZ2Sym};
  return p;
}

// Presets followed by kRandomFields random tree fields.
const std::vector<Stages>& accepted_inputs() {
  static const std::vector<Stages> all = [] {
    std::vector<Stages> out;
    for (Preset p : tree_presets())
      out.push_back(run_stages(std::string(preset_name(p)), generate_preset(p, kGrid)));
    for (std::uint32_t seed = 1; out.size() < tree_presets().size() + kRandomFields; ++seed)
      out.push_back(run_stages("random-" + std::to_string(seed), random_tree_field(kGrid, seed)));
    return out;
  }();
  return all;
}

const AnalysisReport& report_for(Preset p) {
  static std::map<Preset, AnalysisReport> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, analyze(fixtures::preset(p, kGrid))).first;
  return it->second;
}

void criterion_1(Outcome& out) {
  struct Expected {
    Preset preset;
    int n, m, r;
    std::array<int, 3> cells;
    std::string expr;
  };
  const std::vector<Expected> table{
      {Preset::kTwoCell, 1, 1, 2, {2, 4, 2}, "(A_1 x A_2) x Z^2"},
      {Preset::kZ2Sym, 1, 2, 2, {4, 8, 4}, "(A_1 x A_2) wr[Z_1 x Z_2] Z^2"},
      {Preset::kZ2xZ2Sym, 2, 1, 2, {8, 16, 8}, "(A_1 x A_2) wr[Z_2 x Z_2] Z^2"}};
  for (const Expected& e : table) {
    const std::string name(preset_name(e.preset));
    const SurfaceField s = fixtures::preset(e.preset, kGrid);
    const AnalysisReport& rep = report_for(e.preset);
    out.expect(rep.is_tree && rep.reeb_b1 == 0, name + ": KR-graph is not a tree");
    out.expect(rep.special_level == 0, name + ": special level is not 0");
    out.expect(rep.n == e.n && rep.m == e.m && rep.r == e.r, name + ": wrong (n, m, r)");
    out.expect(std::array{rep.zero_cells, rep.one_cells, rep.two_cells} == e.cells,
               name + ": wrong cell counts");
    out.expect(rep.expr.to_string() == e.expr, name + ": expression " + rep.expr.to_string());

    // Brute-force references.
    const auto [junctions, germs] = oracle::level_junctions(s, rep.special_level);
    out.expect(rep.zero_cells == junctions, name + ": 0-cells differ from the junction count");
    out.expect(rep.one_cells == germs / 2, name + ": 1-cells differ from the germ count");
    out.expect(rep.two_cells == oracle::complement_components(s, rep.special_level),
               name + ": 2-cells differ from the complement components");
    const auto translations = oracle::preserving_translations(s, kGrid);
    const auto factors = oracle::translation_group_factors(translations, kGrid);
    out.expect(rep.order == static_cast<int>(translations.size()),
               name + ": symmetry order differs from the translation group");
    out.expect(rep.n == factors[0] && rep.nm() == factors[1],
               name + ": invariant factors differ from the translation group");
    out.expect(rep.r * static_cast<int>(translations.size()) == rep.two_cells,
               name + ": orbit count differs from cells / |G|");
    // Each 2-cell meets the nearest regular levels on its side in one contour.
    std::optional<Rational> below, above;
    for (const Rational& c : oracle::gap_levels(s)) {
      if (c < rep.special_level) below = c;
      if (c > rep.special_level && !above) above = c;
    }
    out.expect(below && above &&
                   oracle::contour_count(s, *below) + oracle::contour_count(s, *above) ==
                       rep.two_cells,
               name + ": contours beside the special level differ from the 2-cell count");
  }
  out.detail << "3 presets";
}

void criterion_2(Outcome& out) {
  const SurfaceField s = fixtures::preset(Preset::kCyclicHeight, kGrid);
  const ReebGraph g = compute_reeb(s);
  out.expect(g.betti1() == 1, "b1 = " + std::to_string(g.betti1()));
  out.expect(!is_tree(g), "graph reported as a tree");
  bool rejected = false;
  try {
    analyze(s);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::kNotTree &&
               std::string(e.what()).find("KR-graph is not a tree") != std::string::npos;
    out.expect(is_input_rejection(e.code()), "rejection does not map to exit code 1");
  }
  out.expect(rejected, "analyze did not reject with the not-a-tree diagnostic");
  out.detail << "b1 = " << g.betti1() << ", exit code 1";
}

void criterion_3(Outcome& out) {
  for (const Stages& st : accepted_inputs()) {
    out.expect(is_tree(st.graph), st.name + ": not a tree");
    out.expect(st.candidates.size() == 1,
               st.name + ": " + std::to_string(st.candidates.size()) + " candidate nodes");
  }
  out.detail << accepted_inputs().size() << " fields";
}

void criterion_4(Outcome& out) {
  for (const Stages& st : accepted_inputs()) {
    const SymmetryGroup& g = st.group;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        out.expect(g.table[a][b] == g.table[b][a], st.name + ": not abelian");
    out.expect(g.nm() % g.n == 0, st.name + ": d1 does not divide d2");
    out.expect(g.n * g.nm() == g.order(), st.name + ": d1 d2 differs from the order");
    int exponent = 1;
    for (int a = 0; a < g.order(); ++a) exponent = std::max(exponent, g.element_order(a));
    out.expect(exponent == g.nm(), st.name + ": d2 is not the exponent");
  }
  out.detail << accepted_inputs().size() << " fields";
}

void criterion_5(Outcome& out) {
  int cases = 0;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c)
        for (long d = -4; d <= 4; ++d) {
          if (a * d - b * c == 0) continue;
          ++cases;
          const IntMatrix m = IntMatrix::from_rows({{a, b}, {c, d}});
          const SnfResult snf = smith_normal_form(m);
          const auto diag = snf.diagonal();
          const auto ref = oracle::cokernel_by_enumeration({a, b, c, d});
          const std::string where = m.to_string();
          out.expect(diag.size() == 2 && diag[0] == ref[0] && diag[1] == ref[1],
                     where + ": invariant factors differ");
          out.expect(snf.U * m * snf.V == snf.D, where + ": U A V != D");
          out.expect(abs(determinant(snf.U)) == 1 && abs(determinant(snf.V)) == 1,
                     where + ": U or V is not unimodular");
        }
  out.detail << cases << " matrices";
}

void criterion_6(Outcome& out) {
  auto z2 = std::make_shared<CyclicGroup>(2);
  const WreathProduct w(z2, 1, 2);
  std::vector<WreathElement> box;
  for (const MapPart& m : w.all_maps())
    for (std::int64_t x = -2; x <= 2; ++x)
      for (std::int64_t y = -2; y <= 2; ++y) box.push_back({m, {x, y}});
  long triples = 0;
  for (const auto& x : box) {
    out.expect(w.multiply(x, w.inverse(x)) == w.identity() &&
                   w.multiply(w.inverse(x), x) == w.identity(),
               "inverse law fails on Z2 1x2");
    out.expect(w.multiply(x, w.identity()) == x && w.multiply(w.identity(), x) == x,
               "identity law fails on Z2 1x2");
    out.expect((w.proj(x) == Shift{0, 0}) == (x == w.sigma(x.map)), "ker proj != im sigma");
    for (const auto& y : box) {
      const WreathElement xy = w.multiply(x, y);
      out.expect(w.proj(xy) == Shift{x.shift[0] + y.shift[0], x.shift[1] + y.shift[1]},
                 "proj is not a homomorphism");
      for (const auto& z : box) {
        ++triples;
        out.expect(w.multiply(xy, z) == w.multiply(x, w.multiply(y, z)),
                   "associativity fails on Z2 1x2");
      }
    }
  }

  const WreathProduct w3(std::make_shared<CyclicGroup>(3), 2, 4);
  std::mt19937 rng(20261017);
  std::uniform_int_distribution<int> value(0, 2), shift(-9, 9);
  auto sample = [&] {
    WreathElement x;
    for (int c = 0; c < w3.cells(); ++c) x.map.push_back({value(rng)});
    x.shift = {shift(rng), shift(rng)};
    return x;
  };
  for (int t = 0; t < 10000; ++t) {
    const auto x = sample(), y = sample(), z = sample();
    out.expect(w3.multiply(w3.multiply(x, y), z) == w3.multiply(x, w3.multiply(y, z)),
               "associativity fails on Z3 2x4");
    out.expect(w3.multiply(x, w3.inverse(x)) == w3.identity(), "inverse law fails on Z3 2x4");
  }

  const WreathProduct w22(std::make_shared<CyclicGroup>(3), 2, 2);
  std::set<MapPart> maps;
  for (const auto& m : w22.all_maps()) maps.insert(m);
  out.expect(w22.map_count() == 81 && maps.size() == 81, "|Map(Z2 x Z2, Z3)| != 81");
  out.detail << triples << " exhaustive triples, 10000 sampled, |Map| = " << maps.size();
}

void criterion_7(Outcome& out) {
  auto z3 = std::make_shared<CyclicGroup>(3);
  const ProductGroup target({z3});
  const Transport identity = [](int, int, int, const GroupElement& h) { return h; };
  const WreathProduct w(std::make_shared<ProductGroup>(target), 1, 2);
  std::vector<std::vector<GroupElement>> families;
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b) families.push_back({{a}, {b}});
  std::set<MapPart> images;
  for (const auto& f : families) {
    const MapPart tf = tau_reindex(f, 1, 1, 2, target, identity);
    images.insert(tf);
    for (const auto& g : families) {
      std::vector<GroupElement> fg{z3->multiply(f[0], g[0]), z3->multiply(f[1], g[1])};
      out.expect(tau_reindex(fg, 1, 1, 2, target, identity) ==
                     w.pointwise(tf, tau_reindex(g, 1, 1, 2, target, identity)),
                 "tau is not a homomorphism");
    }
  }
  out.expect(images.size() == families.size() && w.map_count() == 9, "tau is not bijective");
  out.detail << families.size() << " families";
}

void criterion_8(Outcome& out) {
  const std::vector<std::string> atoms{"1", "Z2", "Z3"};
  int runs = 0;
  for (Preset p : tree_presets())
    for (const auto& a : atoms)
      for (const auto& b : atoms) {
        const VerificationRecord rec = verify_extension(report_for(p), parse_atoms(a + "," + b));
        ++runs;
        for (const auto& c : rec.checks)
          out.expect(c.passed, std::string(preset_name(p)) + " " + a + "," + b + ": check (" +
                                   c.name + ") " + c.detail);
      }
  const VerificationRecord bad =
      verify_extension(report_for(Preset::kZ2Sym), parse_atoms("Z2,Z2"), [](const Shift& k) {
        return Shift{k[0] > 0 ? k[0] : 0, k[1] > 0 ? k[1] : 0};
      });
  out.expect(!bad.check("a").passed, "corrupted shift action passed check (a)");
  out.detail << runs << " instances, corrupted shift fails (a)";
}

void criterion_9(Outcome& out) {
  int symmetries = 0;
  for (const Stages& st : accepted_inputs()) {
    const ChainComplex& c = st.partition.complex;
    const Homology h = cellular_homology(c);
    out.expect(h.betti == std::array<int, 3>{1, 2, 1}, st.name + ": betti numbers differ");
    out.expect(h.torsion[0].empty() && h.torsion[1].empty() && h.torsion[2].empty(),
               st.name + ": torsion in homology");
    for (const CellAutomorphism& e : st.group.elements) {
      ++symmetries;
      out.expect(h1_action(c, h, e) == IntMatrix::identity(2),
                 st.name + ": symmetry acts nontrivially on H1");
    }
  }
  out.detail << accepted_inputs().size() << " partitions, " << symmetries << " symmetries";
}

void criterion_10(Outcome& out) {
  for (Preset p : tree_presets()) {
    const std::string bytes = generate_preset(p, kGrid);
    const std::string first = report_to_json(analyze(load_surface_text(bytes))).dump(2);
    const std::string second = report_to_json(analyze(load_surface_text(bytes))).dump(2);
    out.expect(first == second, std::string(preset_name(p)) + ": JSON differs between runs");
    out.expect(report_to_json(report_from_json(Json::parse(first))).dump(2) == first,
               std::string(preset_name(p)) + ": JSON does not round-trip");
  }
  out.detail << "3 presets";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"presets match the expected invariants and brute-force oracles", criterion_1},
      {"cyclic-height is rejected with b1 = 1", criterion_2},
      {"exactly one node passes the special-vertex test", criterion_3},
      {"symmetry group is abelian with d1 | d2", criterion_4},
      {"Smith normal form agrees with cokernel enumeration", criterion_5},
      {"wreath product group laws and exactness", criterion_6},
      {"tau is a bijective homomorphism for n=1, m=2, r=1, Z3", criterion_7},
      {"verify_extension passes (a)-(c) and rejects a corrupted shift", criterion_8},
      {"cell homology is (1,2,1) and symmetries fix H1", criterion_9},
      {"analysis JSON is deterministic", criterion_10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << "exception: " << e.what();
    }
    failed += !out.ok;
    std::printf("criterion %2zu: %s  %s (%s)\n", i + 1, out.ok ? "PASS" : "FAIL",
                criteria[i].first.c_str(), out.detail.str().c_str());
  }
  return failed == 0 ? 0 : 1;
}
