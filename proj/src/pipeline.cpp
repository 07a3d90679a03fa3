#include "krtorus/pipeline.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "krtorus/error.hpp"

namespace krtorus {

namespace {

bool needs_parens(const GroupExpr& e) {
  return e.kind == GroupExpr::Kind::kDirectProduct || e.kind == GroupExpr::Kind::kWreathOver;
}

std::string wrapped(const GroupExpr& e) {
  return needs_parens(e) ? "(" + e.to_string() + ")" : e.to_string();
}

}  // namespace

std::string GroupExpr::to_string() const {
  switch (kind) {
    case Kind::kTrivial: return "1";
    case Kind::kAtom: return "A_" + std::to_string(atom);
    case Kind::kFreeAbelian: return "Z^" + std::to_string(rank);
    case Kind::kDirectProduct: {
      std::string out;
      for (std::size_t c = 0; c < children.size(); ++c)
        out += (c ? " x " : "") + wrapped(children[c]);
      return out;
    }
    case Kind::kWreathOver:
      return wrapped(children.at(0)) + " wr[Z_" + std::to_string(n) + " x Z_" +
             std::to_string(nm) + "] " + wrapped(children.at(1));
  }
  return "?";
}

GroupExpr orbit_group_expr(int n, int nm, const std::vector<std::string>& atom_subtrees) {
  GroupExpr base;
  std::vector<GroupExpr> atoms;
  for (std::size_t i = 0; i < atom_subtrees.size(); ++i) {
    GroupExpr a;
    a.kind = GroupExpr::Kind::kAtom;
    a.atom = static_cast<int>(i) + 1;
    a.kr_subtree = atom_subtrees[i];
    atoms.push_back(std::move(a));
  }
  if (atoms.size() == 1) {
    base = atoms.front();
  } else if (!atoms.empty()) {
    base.kind = GroupExpr::Kind::kDirectProduct;
    base.children = std::move(atoms);
  }
  GroupExpr z2;
  z2.kind = GroupExpr::Kind::kFreeAbelian;
  z2.rank = 2;
  GroupExpr top;
  if (n == 1 && nm == 1) {
    top.kind = GroupExpr::Kind::kDirectProduct;
  } else {
    top.kind = GroupExpr::Kind::kWreathOver;
    top.n = n;
    top.nm = nm;
  }
  top.children = {std::move(base), std::move(z2)};
  return top;
}

int DiskField::euler_characteristic() const {
  std::set<std::pair<int, int>> edges;
  std::set<int> verts;
  for (const Triangle& t : triangles)
    for (int k = 0; k < 3; ++k) {
      verts.insert(t[k]);
      edges.insert(std::minmax(t[k], t[(k + 1) % 3]));
    }
  return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(triangles.size());
}

DiskField extract_disk_field(const CellPartition& p, const SymmetryGroup& g, int i) {
  if (i < 1 || i > g.r)
    fail(ErrorCode::kRange, "disk orbit " + std::to_string(i) + " is outside [1, " +
                                std::to_string(g.r) + "]");
  DiskField disk;
  disk.id = i;
  disk.cell = g.cell(i - 1, 0, 0);
  const TwoCell& cell = p.two_cells[disk.cell];
  const SurfaceField& r = p.cut.refined;
  const Rational& c = p.level;

  // The closed cell as a mesh of its own.
  std::map<int, int> local;
  std::vector<int> global;
  std::vector<Triangle> tris;
  for (int t : cell.triangles) {
    Triangle tri;
    for (int k = 0; k < 3; ++k) {
      auto [it, fresh] = local.emplace(r.triangles()[t][k], static_cast<int>(global.size()));
      if (fresh) global.push_back(r.triangles()[t][k]);
      tri[k] = it->second;
    }
    tris.push_back(tri);
  }
  std::vector<Rational> values;
  std::optional<Rational> delta;
  for (int v : global) {
    values.push_back(r.value(v));
    if (r.value(v) == c) continue;
    Rational d = abs(r.value(v) - c);
    if (!delta || d < *delta) delta = d;
  }
  check_internal(delta.has_value(), "2-cell lies entirely on the level");
  const Rational half = *delta / 2;
  disk.cut_level = cell.above ? Rational(c + half) : Rational(c - half);
  const SurfaceField sub(std::move(values), std::move(tris));
  const LevelCut cut = cut_at_level(sub, disk.cut_level);
  const SurfaceField& fine = cut.refined;

  // Contour next to V and the side of it away from V.
  const int v_comp = p.cut.component[p.zero_cells.front()];
  auto on_v = [&](int x) { return x < sub.vertex_count() && p.cut.component[global[x]] == v_comp; };
  int collar = -1;
  for (int t = 0; t < fine.triangle_count() && collar < 0; ++t) {
    const Triangle& tri = fine.triangles()[t];
    bool touches_v = false;
    for (int x : tri) touches_v = touches_v || on_v(x);
    if (!touches_v) continue;
    for (int x : tri)
      if (cut.component[x] >= 0) collar = cut.component[x];
  }
  check_internal(collar >= 0, "no contour next to the level component");
  const LevelComplement sides = level_complement(cut, collar);
  std::vector<bool> near_v(sides.region_count, false);
  for (int t = 0; t < fine.triangle_count(); ++t)
    for (int x : fine.triangles()[t])
      if (on_v(x)) near_v[sides.region[t]] = true;
  check_internal(sides.region_count == 2 && near_v[0] != near_v[1],
                 "contour next to V does not split off a disk");
  const int inside = near_v[0] ? 1 : 0;

  std::map<int, int> renumber;
  std::map<int, int> succ;
  for (int t = 0; t < fine.triangle_count(); ++t) {
    if (sides.region[t] != inside) continue;
    const Triangle& tri = fine.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if (cut.component[a] == collar && cut.component[b] == collar) succ[a] = b;
    }
    disk.triangles.push_back(tri);
  }
  for (const Triangle& tri : disk.triangles)
    for (int x : tri) renumber.emplace(x, 0);
  int next = 0;
  for (auto& [old, id] : renumber) {
    id = next++;
    disk.values.push_back(fine.value(old));
  }
  for (Triangle& tri : disk.triangles)
    for (int& x : tri) x = renumber.at(x);
  check_internal(!succ.empty(), "disk without boundary");
  int start = succ.begin()->first, x = start;
  do {
    disk.boundary.push_back(renumber.at(x));
    x = succ.at(x);
  } while (x != start && disk.boundary.size() <= succ.size());
  check_internal(x == start && disk.boundary.size() == succ.size(),
                 "disk boundary is not a single loop");
  check_internal(disk.euler_characteristic() == 1, "extracted disk is not a disk");
  return disk;
}

AnalysisReport analyze(const SurfaceField& s) {
  AnalysisReport rep;
  const SurfaceTopology topo = validate_closed_orientable(s);
  rep.vertices = s.vertex_count();
  rep.triangles = s.triangle_count();
  rep.chi = topo.chi;
  rep.genus = topo.genus;
  if (topo.genus != 1)
    fail(ErrorCode::kNotTorus, "surface has genus " + std::to_string(topo.genus) +
                                   " (Euler characteristic " + std::to_string(topo.chi) +
                                   "), not a torus");

  const ReebGraph g = compute_reeb(s);
  rep.reeb_nodes = g.node_count();
  rep.reeb_edges = g.edge_count();
  rep.reeb_b1 = g.betti1();
  rep.is_tree = is_tree(g);
  if (!rep.is_tree)
    fail(ErrorCode::kNotTree,
         "KR-graph is not a tree (first Betti number " + std::to_string(rep.reeb_b1) + ")");

  const int v = find_special_vertex(s, g);
  rep.special_node = v;
  rep.special_level = g.nodes[v].level;
  rep.branch_chis = branch_euler(s, g, v);
  const CellPartition p = build_partition(s, g, v);
  rep.zero_cells = p.complex.n0;
  rep.one_cells = p.complex.n1;
  rep.two_cells = p.complex.n2;
  const Homology h = cellular_homology(p.complex);
  check_internal(h.betti == std::array<int, 3>{1, 2, 1} && h.torsion[0].empty() &&
                     h.torsion[1].empty() && h.torsion[2].empty(),
                 "cell partition does not have the homology of a torus");

  const SymmetryGroup grp = analyze_symmetry(p);
  rep.order = grp.order();
  rep.n = grp.n;
  rep.m = grp.m;
  rep.r = grp.r;
  rep.generator_L = grp.elements[grp.L].two;
  rep.generator_M = grp.elements[grp.M].two;
  for (const CellAutomorphism& e : grp.elements)
    rep.realized = rep.realized && (e.is_identity() || realized_by_field_symmetry(p, e));
  check_internal(rep.r * rep.n * rep.nm() == rep.two_cells, "orbit count law violated");
  for (int i = 0; i < grp.r; ++i)
    for (int j = 0; j < grp.n; ++j)
      for (int k = 0; k < grp.nm(); ++k) rep.orbit_table.push_back({i + 1, j, k, grp.cell(i, j, k)});

  std::vector<std::string> subtrees;
  for (int i = 0; i < grp.r; ++i) subtrees.push_back(p.two_cells[grp.cell(i, 0, 0)].signature);
  rep.expr = orbit_group_expr(grp.n, grp.nm(), subtrees);
  for (int i = 1; i <= grp.r; ++i) rep.disks.push_back(extract_disk_field(p, grp, i));
  return rep;
}

std::vector<BaseGroupPtr> parse_atoms(const std::string& text) {
  std::vector<BaseGroupPtr> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_atom(item));
  if (out.empty()) fail(ErrorCode::kParse, "empty atom list");
  return out;
}

bool VerificationRecord::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const VerificationCheck& VerificationRecord::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  fail(ErrorCode::kRange, "no verification check named " + name);
}

namespace {

constexpr int kShiftRadius = 2;
constexpr int kExhaustiveRadius = 1;
constexpr std::int64_t kExhaustiveBox = 36;
constexpr std::int64_t kSampledTriples = 3000;
constexpr std::int64_t kEnumerationLimit = 200000;

struct Checker {
  VerificationCheck& check;
  void expect(bool ok, const std::string& what) {
    if (ok || !check.passed) {
      if (!ok) check.passed = false;
      return;
    }
    check.passed = false;
    check.detail = what;
  }
};

std::int64_t ipow(std::int64_t base, std::int64_t exp) {
  std::int64_t out = 1;
  for (std::int64_t e = 0; e < exp; ++e) {
    if (out > kEnumerationLimit * 1000) fail(ErrorCode::kRange, "atom product too large");
    out *= base;
  }
  return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

VerificationRecord verify_extension(const AnalysisReport& report,
                                    const std::vector<BaseGroupPtr>& atoms,
                                    WreathProduct::ShiftRule rule) {
  if (static_cast<int>(atoms.size()) != report.r)
    fail(ErrorCode::kGroupMismatch, "expected " + std::to_string(report.r) + " atoms, got " +
                                        std::to_string(atoms.size()));
  for (const auto& a : atoms)
    if (!a || !a->order()) fail(ErrorCode::kGroupMismatch, "atoms must be finite groups");
  const int n = report.n, nm = report.nm();
  auto base = std::make_shared<ProductGroup>(atoms);
  const WreathProduct w(base, n, nm, std::move(rule));
  const std::vector<GroupElement> base_elems = *base->elements();

  VerificationRecord rec;
  rec.atoms = base->name();
  rec.n = n;
  rec.nm = nm;
  rec.r = report.r;
  rec.checks = {{"a", "1 -> Map(Z_n x Z_nm, prod A_i) -> W -> Z^2 -> 1 is exact and W is a group", true, ""},
                {"b", "1 -> Z^2 -q-> Z^2 -> Z_n x Z_nm -> 1 with q(l, m) = (n l, nm m)", true, ""},
                {"c", "kernel of the finite truncation has |prod A_i|^(n nm) elements and tau is a "
                      "bijective homomorphism", true, ""}};

  std::mt19937_64 rng(0x6b72746f727573ULL);
  auto random_map = [&] {
    MapPart m(w.cells());
    std::uniform_int_distribution<std::size_t> pick(0, base_elems.size() - 1);
    for (auto& x : m) x = base_elems[pick(rng)];
    return m;
  };
  auto random_element = [&] {
    std::uniform_int_distribution<int> s(-kShiftRadius, kShiftRadius);
    MapPart m = random_map();
    Shift k{s(rng), s(rng)};
    return WreathElement{std::move(m), k};
  };

  // (a)
  {
    Checker a{rec.checks[0]};
    const std::int64_t maps = *w.map_count();
    std::vector<WreathElement> box;
    if (maps * (2 * kExhaustiveRadius + 1) * (2 * kExhaustiveRadius + 1) <= kExhaustiveBox) {
      rec.exhaustive = true;
      for (const MapPart& m : w.all_maps())
        for (std::int64_t x = -kExhaustiveRadius; x <= kExhaustiveRadius; ++x)
          for (std::int64_t y = -kExhaustiveRadius; y <= kExhaustiveRadius; ++y)
            box.push_back({m, {x, y}});
    }
    const std::int64_t triples =
        rec.exhaustive ? static_cast<std::int64_t>(box.size() * box.size() * box.size())
                       : kSampledTriples;
    rec.sampled_triples = triples;
    const WreathElement e = w.identity();
    for (std::int64_t t = 0; t < triples; ++t) {
      WreathElement x, y, z;
      if (rec.exhaustive) {
        const std::size_t b = box.size();
        x = box[t / (b * b)];
        y = box[(t / b) % b];
        z = box[t % b];
      } else {
        x = random_element();
        y = random_element();
        z = random_element();
      }
      const WreathElement xy = w.multiply(x, y);
      a.expect(w.multiply(xy, z) == w.multiply(x, w.multiply(y, z)),
               "associativity fails for x = " + w.format(x) + ", y = " + w.format(y) +
                   ", z = " + w.format(z));
      a.expect(w.multiply(x, e) == x && w.multiply(e, x) == x,
               "identity law fails for " + w.format(x));
      a.expect(w.multiply(x, w.inverse(x)) == e && w.multiply(w.inverse(x), x) == e,
               "inverse law fails for " + w.format(x));
      a.expect(w.proj(xy) == Shift{x.shift[0] + y.shift[0], x.shift[1] + y.shift[1]},
               "proj is not a homomorphism at " + w.format(x) + ", " + w.format(y));
      a.expect((w.proj(x) == Shift{0, 0}) == (x == w.sigma(x.map)),
               "ker proj differs from im sigma at " + w.format(x));
      a.expect(w.sigma(w.pointwise(x.map, y.map)) == w.multiply(w.sigma(x.map), w.sigma(y.map)),
               "sigma is not a homomorphism");
      a.expect(x.map == y.map || !(w.sigma(x.map) == w.sigma(y.map)), "sigma is not injective");
    }
    for (std::int64_t x = -kShiftRadius; x <= kShiftRadius; ++x)
      for (std::int64_t y = -kShiftRadius; y <= kShiftRadius; ++y)
        a.expect(w.proj(WreathElement{w.constant_identity(), {x, y}}) == Shift{x, y},
                 "proj misses a shift");
  }

  // (b)
  {
    Checker b{rec.checks[1]};
    IntMatrix q(2, 2);
    q(0, 0) = n;
    q(1, 1) = nm;
    b.expect(smith_normal_form(q).rank == 2, "q is not injective");
    b.expect(lattice_quotient_pair(q) == std::array<Integer, 2>{n, nm},
             "coker q is not Z_n x Z_nm");
    b.expect(n * nm == report.order, "|Z_n x Z_nm| differs from the symmetry group order");
    const int radius = 2 * nm + 2;
    std::set<std::pair<int, int>> hit;
    for (int x = -radius; x <= radius; ++x)
      for (int y = -radius; y <= radius; ++y) {
        const int dx = static_cast<int>(floor_mod(x, n)), dy = static_cast<int>(floor_mod(y, nm));
        hit.insert({dx, dy});
        // d o q = 0
        b.expect(floor_mod(static_cast<std::int64_t>(n) * x, n) == 0 &&
                     floor_mod(static_cast<std::int64_t>(nm) * y, nm) == 0,
                 "d o q is not zero");
        // ker d lies in im q
        if (dx == 0 && dy == 0)
          b.expect(x % n == 0 && y % nm == 0, "ker d is not in im q");
      }
    b.expect(static_cast<int>(hit.size()) == n * nm, "d is not surjective");
  }

  // (c)
  {
    Checker c{rec.checks[2]};
    std::int64_t prod_order = 1;
    for (const auto& a : atoms) prod_order *= *a->order();
    rec.expected_kernel_size = ipow(prod_order, static_cast<std::int64_t>(n) * nm);
    const std::int64_t maps = *w.map_count();
    auto truncate = [&](WreathElement x) {
      x.shift = {floor_mod(x.shift[0], n), floor_mod(x.shift[1], nm)};
      return x;
    };
    if (maps * n * nm <= kEnumerationLimit) {
      std::int64_t kernel = 0;
      for (const MapPart& m : w.all_maps(kEnumerationLimit))
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < nm; ++y)
            if (truncate(WreathElement{m, {x, y}}).shift == Shift{0, 0}) ++kernel;
      rec.kernel_size = kernel;
    } else {
      rec.kernel_size = maps;
    }
    c.expect(rec.kernel_size == rec.expected_kernel_size,
             "kernel has " + std::to_string(rec.kernel_size) + " elements, expected " +
                 std::to_string(rec.expected_kernel_size));
    for (int t = 0; t < 500; ++t) {
      WreathElement x = random_element(), y = random_element();
      c.expect(truncate(w.multiply(x, y)) == truncate(w.multiply(truncate(x), truncate(y))),
               "truncation to Z_n x Z_nm is not a homomorphism at " + w.format(x) + ", " +
                   w.format(y));
    }

    // tau with the identifications S_ijk = A_i.
    const int r = report.r;
    Transport same = [](int, int, int, const GroupElement& h) { return h; };
    std::vector<std::vector<GroupElement>> atom_elems;
    for (const auto& a : atoms) atom_elems.push_back(*a->elements());
    const int slots = r * n * nm;
    auto random_family = [&] {
      std::vector<GroupElement> fam(slots);
      for (int s = 0; s < slots; ++s) {
        const auto& el = atom_elems[s / (n * nm)];
        fam[s] = el[std::uniform_int_distribution<std::size_t>(0, el.size() - 1)(rng)];
      }
      return fam;
    };
    if (rec.expected_kernel_size <= kEnumerationLimit) {
      std::set<MapPart> images;
      std::vector<std::size_t> idx(slots, 0);
      for (bool more = true; more;) {
        std::vector<GroupElement> fam(slots);
        for (int s = 0; s < slots; ++s) fam[s] = atom_elems[s / (n * nm)][idx[s]];
        images.insert(tau_reindex(fam, r, n, nm, *base, same));
        int s = slots;
        while (s > 0 && ++idx[s - 1] == atom_elems[(s - 1) / (n * nm)].size()) idx[--s] = 0;
        more = s > 0;
      }
      c.expect(static_cast<std::int64_t>(images.size()) == rec.expected_kernel_size &&
                   static_cast<std::int64_t>(images.size()) == maps,
               "tau is not a bijection onto the kernel");
    }
    for (int t = 0; t < 200; ++t) {
      auto f = random_family(), g = random_family();
      std::vector<GroupElement> fg(slots);
      for (int s = 0; s < slots; ++s) fg[s] = atoms[s / (n * nm)]->multiply(f[s], g[s]);
      const MapPart tf = tau_reindex(f, r, n, nm, *base, same);
      const MapPart tg = tau_reindex(g, r, n, nm, *base, same);
      c.expect(tau_reindex(fg, r, n, nm, *base, same) == w.pointwise(tf, tg),
               "tau is not a homomorphism");
      c.expect(f == g || tf != tg, "tau is not injective");
    }
  }
  return rec;
}

}  // namespace krtorus
