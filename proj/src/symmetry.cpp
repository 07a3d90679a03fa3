#include "krtorus/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "krtorus/error.hpp"

namespace krtorus {

std::vector<int> propagate_darts(const CellPartition& p, int seed, int image) {
  const int nd = p.dart_count();
  std::vector<int> psi(nd, -1), inv(nd, -1);
  std::vector<int> stack{seed};
  psi[seed] = image;
  inv[image] = seed;
  auto assign = [&](int x, int y) {
    if (psi[x] >= 0) return psi[x] == y;
    if (inv[y] >= 0) return false;
    psi[x] = y;
    inv[y] = x;
    stack.push_back(x);
    return true;
  };
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (!assign(p.rotation[x], p.rotation[psi[x]]) || !assign(x ^ 1, psi[x] ^ 1)) return {};
  }
  for (int y : psi)
    if (y < 0) return {};
  return psi;
}

CellAutomorphism automorphism_from_darts(const CellPartition& p, const std::vector<int>& darts) {
  const ChainComplex& c = p.complex;
  CellAutomorphism a;
  a.zero.assign(c.n0, -1);
  a.one.resize(c.n1);
  a.one_sign.resize(c.n1);
  a.two.assign(c.n2, -1);
  a.two_sign.assign(c.n2, 0);
  for (int e = 0; e < c.n1; ++e) {
    a.one[e] = darts[2 * e] / 2;
    a.one_sign[e] = darts[2 * e] % 2 ? -1 : 1;
  }
  for (int d = 0; d < p.dart_count(); ++d) {
    int& z = a.zero[p.tail(d)];
    check_internal(z < 0 || z == p.tail(darts[d]), "dart map does not respect vertices");
    z = p.tail(darts[d]);
  }
  for (int f = 0; f < c.n2; ++f) {
    const int d = p.two_cells[f].boundary.front();
    a.two[f] = p.left_face(darts[d]);
    const int e = d / 2;
    const Integer& src = c.d2(e, f);
    const Integer& dst = c.d2(a.one[e], a.two[f]);
    check_internal(src != 0 && dst != 0, "boundary one-cell missing from d2");
    a.two_sign[f] = src * a.one_sign[e] == dst ? 1 : -1;
  }
  return a;
}

std::vector<CellAutomorphism> enumerate_symmetries(const CellPartition& p) {
  const ChainComplex& c = p.complex;
  const Homology h = cellular_homology(c);
  const IntMatrix id2 = IntMatrix::identity(h.betti[1]);
  check_internal(!p.two_cells.empty(), "partition without 2-cells");
  const TwoCell& seed_cell = p.two_cells.front();
  const int seed = seed_cell.boundary.front();

  std::vector<CellAutomorphism> out;
  for (const TwoCell& target : p.two_cells) {
    if (target.signature != seed_cell.signature ||
        target.boundary.size() != seed_cell.boundary.size())
      continue;
    for (int image : target.boundary) {
      std::vector<int> darts = propagate_darts(p, seed, image);
      if (darts.empty()) continue;
      CellAutomorphism a = automorphism_from_darts(p, darts);

      bool keep = true;
      for (int v = 0; v < c.n0 && keep; ++v) keep = p.zero_kinds[v] == p.zero_kinds[a.zero[v]];
      for (int e = 0; e < c.n1 && keep; ++e) keep = a.one_sign[e] == 1;
      for (int f = 0; f < c.n2 && keep; ++f)
        keep = a.two_sign[f] == 1 && p.two_cells[f].signature == p.two_cells[a.two[f]].signature;
      if (!keep || !a.is_chain_map(c)) continue;
      if (h1_action(c, h, a) != id2) continue;
      if (!a.is_identity()) {
        bool fixes = false;
        for (int v = 0; v < c.n0; ++v) fixes = fixes || a.zero[v] == v;
        for (int e = 0; e < c.n1; ++e) fixes = fixes || a.one[e] == e;
        for (int f = 0; f < c.n2; ++f) fixes = fixes || a.two[f] == f;
        if (fixes) continue;
      }
      out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  check_internal(!out.empty() && out.front().is_identity(), "identity is not a symmetry");
  return out;
}

int SymmetryGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = table[x][a]) ++k;
  return k;
}

int SymmetryGroup::power_product(int j, int k) const {
  int x = 0;
  for (int t = 0; t < j; ++t) x = table[L][x];
  for (int t = 0; t < k; ++t) x = table[M][x];
  return x;
}

namespace {

/// Elements of the subgroup generated by `gens`.
std::set<int> generated(const std::vector<std::vector<int>>& table, const std::vector<int>& gens) {
  std::set<int> seen{0};
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int g : gens)
      if (seen.insert(table[g][x]).second) stack.push_back(table[g][x]);
  }
  return seen;
}

}  // namespace

SymmetryGroup group_structure(std::vector<CellAutomorphism> elements) {
  SymmetryGroup g;
  std::sort(elements.begin(), elements.end());
  check_internal(!elements.empty() && elements.front().is_identity(),
                 "symmetry set lacks the identity");
  g.elements = std::move(elements);
  const int order = g.order();

  std::map<CellAutomorphism, int> index;
  for (int a = 0; a < order; ++a) index[g.elements[a]] = a;
  check_internal(static_cast<int>(index.size()) == order, "repeated symmetry");
  g.table.assign(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      auto it = index.find(g.elements[a].compose(g.elements[b]));
      check_internal(it != index.end(), "symmetry set is not closed under composition");
      g.table[a][b] = it->second;
    }
  for (int a = 0; a < order; ++a) {
    check_internal(index.count(g.elements[a].inverse()) == 1, "symmetry set lacks an inverse");
    for (int b = 0; b < order; ++b) {
      for (int c = 0; c < order; ++c)
        check_internal(g.table[g.table[a][b]][c] == g.table[a][g.table[b][c]],
                       "symmetry composition is not associative");
      if (g.table[a][b] != g.table[b][a])
        fail(ErrorCode::kHypothesisViolation, "symmetry group is not abelian");
    }
  }
  std::set<std::vector<int>> on_two_cells;
  for (const CellAutomorphism& a : g.elements) on_two_cells.insert(a.two);
  check_internal(static_cast<int>(on_two_cells.size()) == order,
                 "symmetry group does not act faithfully on the 2-cells");

  // Greedy generators and their relation lattice.
  std::vector<int> gens;
  for (int a = 1; a < order; ++a)
    if (!generated(g.table, gens).count(a)) gens.push_back(a);
  const int k = static_cast<int>(gens.size());
  std::vector<int> orders;
  for (int a : gens) orders.push_back(g.element_order(a));
  std::vector<std::vector<long>> relations;
  for (int i = 0; i < k; ++i) {
    std::vector<long> col(k, 0);
    col[i] = orders[i];
    relations.push_back(col);
  }
  std::vector<int> exps(k, 0);
  for (bool more = k > 0; more;) {
    int x = 0;
    for (int i = 0; i < k; ++i)
      for (int t = 0; t < exps[i]; ++t) x = g.table[gens[i]][x];
    if (x == 0 && std::any_of(exps.begin(), exps.end(), [](int e) { return e != 0; }))
      relations.push_back(std::vector<long>(exps.begin(), exps.end()));
    int i = 0;
    while (i < k && ++exps[i] == orders[i]) exps[i++] = 0;
    more = i < k;
  }
  std::array<int, 2> factors{1, 1};
  if (k > 0) {
    IntMatrix rel = IntMatrix::from_rows(relations).transpose();
    CokernelInvariants inv = cokernel_invariants(rel);
    check_internal(inv.free_rank == 0, "relation lattice has infinite index");
    if (inv.factors.size() > 2)
      fail(ErrorCode::kHypothesisViolation, "symmetry group needs more than two generators");
    for (std::size_t i = 0; i < inv.factors.size(); ++i)
      factors[2 - inv.factors.size() + i] = static_cast<int>(inv.factors[i]);
  }
  check_internal(factors[0] * factors[1] == order, "invariant factors do not match the order");
  g.n = factors[0];
  g.m = factors[1] / factors[0];

  // Lexicographically first (L, M) with orders n and nm and trivial intersection.
  bool found = false;
  for (int l = 0; l < order && !found; ++l) {
    if (g.element_order(l) != g.n) continue;
    const std::set<int> lgroup = generated(g.table, {l});
    for (int mm = 0; mm < order && !found; ++mm) {
      if (g.element_order(mm) != g.nm()) continue;
      const std::set<int> mgroup = generated(g.table, {mm});
      bool meet = false;
      for (int x : mgroup) meet = meet || (x != 0 && lgroup.count(x));
      if (meet) continue;
      g.L = l;
      g.M = mm;
      found = true;
    }
  }
  check_internal(found, "no generators L, M realise the invariant factors");
  return g;
}

void index_orbits(SymmetryGroup& g, const CellPartition& p) {
  const int n2 = static_cast<int>(p.two_cells.size());
  if (n2 % g.order() != 0)
    fail(ErrorCode::kInternal, "2-cell count is not a multiple of the group order");
  g.r = n2 / g.order();
  g.orbit_table.assign(n2, -1);
  g.cell_index.assign(n2, {-1, -1, -1});
  int i = 0;
  for (int rep = 0; rep < n2; ++rep) {
    if (g.cell_index[rep][0] >= 0) continue;
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.nm(); ++k) {
        const int cell = g.elements[g.power_product(j, k)].two[rep];
        check_internal(g.cell_index[cell][0] < 0, "symmetry orbits overlap");
        g.cell_index[cell] = {i, j, k};
        g.orbit_table[(i * g.n + j) * g.nm() + k] = cell;
      }
    ++i;
  }
  check_internal(i == g.r, "orbit count differs from the cell count over the order");
}

SymmetryGroup analyze_symmetry(const CellPartition& p) {
  SymmetryGroup g = group_structure(enumerate_symmetries(p));
  index_orbits(g, p);
  return g;
}

bool realized_by_field_symmetry(const CellPartition& p, const CellAutomorphism& a) {
  const SurfaceField& s = p.cut.refined;
  if (p.one_cells.empty() || a.one.empty()) return false;
  std::map<std::pair<int, int>, int> third;
  for (const Triangle& t : s.triangles())
    for (int k = 0; k < 3; ++k) third[{t[k], t[(k + 1) % 3]}] = t[(k + 2) % 3];

  std::vector<int> image(s.vertex_count(), -1);
  auto assign = [&](int x, int y) {
    if (image[x] < 0) image[x] = y;
    return image[x] == y && s.value(x) == s.value(y);
  };
  const std::vector<int>& from = p.one_cells[0].path;
  std::vector<int> to = p.one_cells[a.one[0]].path;
  if (a.one_sign[0] < 0) std::reverse(to.begin(), to.end());
  if (from.size() != to.size()) return false;
  std::vector<std::pair<int, int>> stack;
  std::set<std::pair<int, int>> seen;
  for (std::size_t t = 0; t < from.size(); ++t) {
    if (!assign(from[t], to[t])) return false;
    if (t > 0) {
      stack.push_back({from[t - 1], from[t]});
      stack.push_back({from[t], from[t - 1]});
    }
  }
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    if (!seen.insert({u, v}).second) continue;
    const auto here = third.find({u, v});
    const auto there = third.find({image[u], image[v]});
    if (here == third.end() || there == third.end()) return false;
    const int w = here->second;
    if (!assign(w, there->second)) return false;
    stack.push_back({v, u});
    stack.push_back({w, v});
    stack.push_back({u, w});
  }
  std::vector<bool> hit(s.vertex_count(), false);
  for (int x : image) {
    if (x < 0 || hit[x]) return false;
    hit[x] = true;
  }
  for (std::size_t z = 0; z < p.zero_cells.size(); ++z)
    if (image[p.zero_cells[z]] != p.zero_cells[a.zero[z]]) return false;
  return true;
}

}  // namespace krtorus
