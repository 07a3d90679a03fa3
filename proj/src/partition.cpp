#include "krtorus/partition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "krtorus/error.hpp"
#include "krtorus/union_find.hpp"

namespace krtorus {

namespace {

int side(const Rational& value, const Rational& level) {
  return value < level ? -1 : value > level ? 1 : 0;
}

Triangle rotate_to(const Triangle& t, int k) { return {t[k], t[(k + 1) % 3], t[(k + 2) % 3]}; }

/// Refined triangle containing the directed edge a -> b.
int triangle_left_of(const SurfaceField& s, int a, int b) {
  for (int t : s.incident_triangles(a)) {
    const Triangle& tri = s.triangles()[t];
    for (int k = 0; k < 3; ++k)
      if (tri[k] == a && tri[(k + 1) % 3] == b) return t;
  }
  fail(ErrorCode::kInternal, "directed edge without a triangle");
}

int third_vertex(const Triangle& tri, int a, int b) {
  for (int x : tri)
    if (x != a && x != b) return x;
  return -1;
}

/// Branch of `node` containing each Reeb node and edge.
struct BranchLookup {
  std::vector<int> of_node;
  std::vector<int> of_edge;

  BranchLookup(const ReebGraph& g, const std::vector<Branch>& branches)
      : of_node(g.nodes.size(), -1), of_edge(g.edges.size(), -1) {
    for (std::size_t b = 0; b < branches.size(); ++b) {
      for (int u : branches[b].nodes) of_node[u] = static_cast<int>(b);
      for (int e : branches[b].edges) of_edge[e] = static_cast<int>(b);
    }
  }

  int of_vertex(const ReebGraph& g, int v) const {
    const ReebLocation& loc = g.vertex_location[v];
    return loc.on_node ? of_node[loc.id] : of_edge[loc.id];
  }
};

/// Level component through the node's critical vertices; all of them must
/// share it.
int node_component(const LevelCut& cut, const ReebNode& node) {
  check_internal(!node.vertices.empty(), "Reeb node without vertices");
  int comp = cut.component[node.vertices.front()];
  for (int v : node.vertices)
    check_internal(cut.component[v] == comp && comp >= 0,
                   "critical vertices of one node lie on different level components");
  return comp;
}

/// Branch of every complement region, checked for consistency.
std::vector<int> region_branches(const SurfaceField& s, const ReebGraph& g, const LevelCut& cut,
                                 const LevelComplement& comp, const BranchLookup& lookup) {
  std::vector<int> branch(comp.region_count, -1);
  const int n = s.vertex_count();
  for (int t = 0; t < cut.refined.triangle_count(); ++t) {
    for (int v : cut.refined.triangles()[t]) {
      if (v >= n || s.value(v) == cut.level) continue;
      int b = lookup.of_vertex(g, v);
      check_internal(b >= 0, "vertex off the level maps to no branch");
      int& slot = branch[comp.region[t]];
      check_internal(slot < 0 || slot == b, "complement region spans two branches");
      slot = b;
    }
  }
  for (int b : branch) check_internal(b >= 0, "complement region without a branch");
  return branch;
}

}  // namespace

LevelCut cut_at_level(const SurfaceField& s, const Rational& c) {
  const int n = s.vertex_count();
  std::vector<int> sgn(n);
  for (int v = 0; v < n; ++v) sgn[v] = side(s.value(v), c);

  std::vector<Rational> values = s.values();
  std::optional<std::vector<Point3>> coords = s.coords();
  std::vector<int> crossing(s.edge_count(), -1);
  for (int e = 0; e < s.edge_count(); ++e) {
    auto [a, b] = s.edges()[e];
    if (sgn[a] * sgn[b] >= 0) continue;
    crossing[e] = static_cast<int>(values.size());
    values.push_back(c);
    if (coords) {
      const double t = to_double((c - s.value(a)) / (s.value(b) - s.value(a)));
      const Point3 pa = (*coords)[a], pb = (*coords)[b];
      coords->push_back({pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]),
                         pa[2] + t * (pb[2] - pa[2])});
    }
  }
  auto cross = [&](int a, int b) {
    int p = crossing[s.edge_index(a, b)];
    check_internal(p >= 0, "expected a crossing edge");
    return p;
  };

  std::vector<Triangle> tris;
  std::vector<int> parent;
  auto emit = [&](Triangle t, int from) {
    tris.push_back(t);
    parent.push_back(from);
  };
  for (int t = 0; t < s.triangle_count(); ++t) {
    const Triangle& tri = s.triangles()[t];
    int zeros = 0;
    for (int v : tri) zeros += sgn[v] == 0;
    if (zeros == 3)
      fail(ErrorCode::kDegenerateLevel,
           "triangle " + std::to_string(t) + " lies flat on level " + format_scalar(c));
    if (zeros == 1) {
      int k = sgn[tri[0]] == 0 ? 0 : sgn[tri[1]] == 0 ? 1 : 2;
      auto [a, b, d] = rotate_to(tri, k);
      if (sgn[b] * sgn[d] < 0) {
        int p = cross(b, d);
        emit({a, b, p}, t);
        emit({a, p, d}, t);
        continue;
      }
    } else if (zeros == 0 && !(sgn[tri[0]] == sgn[tri[1]] && sgn[tri[1]] == sgn[tri[2]])) {
      int k = sgn[tri[0]] != sgn[tri[1]] && sgn[tri[0]] != sgn[tri[2]] ? 0
              : sgn[tri[1]] != sgn[tri[0]] && sgn[tri[1]] != sgn[tri[2]] ? 1
                                                                          : 2;
      auto [a, b, d] = rotate_to(tri, k);
      int p = cross(a, b), q = cross(a, d);
      emit({a, p, q}, t);
      emit({p, b, d}, t);
      emit({p, d, q}, t);
      continue;
    }
    emit(tri, t);
  }

  LevelCut cut;
  cut.level = c;
  cut.refined = SurfaceField(std::move(values), std::move(tris), std::move(coords));
  cut.parent_triangle = std::move(parent);

  const SurfaceField& r = cut.refined;
  UnionFind uf(r.vertex_count());
  for (const auto& [a, b] : r.edges())
    if (r.value(a) == c && r.value(b) == c) uf.join(a, b);
  cut.component.assign(r.vertex_count(), -1);
  std::map<int, int> dense;
  for (int v = 0; v < r.vertex_count(); ++v) {
    if (r.value(v) != c) continue;
    auto [it, fresh] = dense.emplace(uf.find(v), cut.component_count);
    if (fresh) ++cut.component_count;
    cut.component[v] = it->second;
  }
  return cut;
}

LevelComplement level_complement(const LevelCut& cut, int component) {
  const SurfaceField& r = cut.refined;
  auto on_v = [&](int v) { return cut.component[v] == component; };
  auto edge_on_v = [&](int a, int b) { return on_v(a) && on_v(b); };

  UnionFind uf(r.triangle_count());
  std::map<std::pair<int, int>, int> first_side;
  for (int t = 0; t < r.triangle_count(); ++t) {
    const Triangle& tri = r.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if (edge_on_v(a, b)) continue;
      auto key = std::minmax(a, b);
      auto [it, fresh] = first_side.emplace(std::pair(key.first, key.second), t);
      if (!fresh) uf.join(it->second, t);
    }
  }
  LevelComplement out;
  out.region = uf.labels(&out.region_count);
  out.euler.assign(out.region_count, 0);
  for (int t = 0; t < r.triangle_count(); ++t) out.euler[out.region[t]] += 1;
  // Each open edge lies in the region of either incident triangle.
  for (const auto& [key, t] : first_side) out.euler[out.region[t]] -= 1;
  for (int v = 0; v < r.vertex_count(); ++v) {
    if (on_v(v)) continue;
    out.euler[out.region[r.incident_triangles(v).front()]] += 1;
  }
  return out;
}

std::vector<int> branch_euler(const SurfaceField& s, const ReebGraph& g, int node) {
  const std::vector<Branch> branches = branches_at(g, node);
  const BranchLookup lookup(g, branches);
  const LevelCut cut = cut_at_level(s, g.nodes[node].level);
  const LevelComplement comp = level_complement(cut, node_component(cut, g.nodes[node]));
  check_internal(comp.region_count == static_cast<int>(branches.size()),
                 "complement regions do not match the branches at node " + std::to_string(node));
  const std::vector<int> region_branch = region_branches(s, g, cut, comp, lookup);

  std::vector<int> by_cells(branches.size(), 0);
  std::vector<bool> seen(branches.size(), false);
  for (int k = 0; k < comp.region_count; ++k) {
    check_internal(!seen[region_branch[k]], "two complement regions map to one branch");
    seen[region_branch[k]] = true;
    by_cells[region_branch[k]] = comp.euler[k];
  }
  for (std::size_t b = 0; b < branches.size(); ++b) {
    int by_index = 0;
    for (int u : branches[b].nodes) by_index += g.nodes[u].index_sum();
    check_internal(by_index == by_cells[b],
                   "branch Euler characteristic disagrees between cell count (" +
                       std::to_string(by_cells[b]) + ") and index sum (" +
                       std::to_string(by_index) + ")");
  }
  return by_cells;
}

std::vector<int> special_vertex_candidates(const SurfaceField& s, const ReebGraph& g) {
  std::vector<int> out;
  for (int u = 0; u < g.node_count(); ++u) {
    std::vector<int> chis = branch_euler(s, g, u);
    if (std::all_of(chis.begin(), chis.end(), [](int x) { return x == 1; })) out.push_back(u);
  }
  return out;
}

int find_special_vertex(const SurfaceField& s, const ReebGraph& g) {
  std::vector<int> candidates = special_vertex_candidates(s, g);
  if (candidates.empty())
    fail(ErrorCode::kNoSpecialVertex, "no node has only disk branches");
  if (candidates.size() > 1)
    fail(ErrorCode::kInternal, "several nodes have only disk branches");
  return candidates.front();
}

int CellPartition::tail(int dart) const {
  const OneCell& e = one_cells[dart / 2];
  return dart % 2 ? e.end : e.start;
}

int CellPartition::head(int dart) const {
  const OneCell& e = one_cells[dart / 2];
  return dart % 2 ? e.start : e.end;
}

int CellPartition::left_face(int dart) const {
  const OneCell& e = one_cells[dart / 2];
  return dart % 2 ? e.down : e.up;
}

int CellPartition::face_next(int dart) const {
  // sigma^-1 applied to the reversed dart.
  const int back = dart ^ 1;
  for (int d = 0; d < dart_count(); ++d)
    if (rotation[d] == back) return d;
  fail(ErrorCode::kInternal, "rotation is not a permutation");
}

CellPartition build_partition(const SurfaceField& s, const ReebGraph& g, int node) {
  CellPartition p;
  p.node = node;
  p.level = g.nodes[node].level;
  p.cut = cut_at_level(s, p.level);
  const SurfaceField& r = p.cut.refined;
  const Rational& c = p.level;
  const int comp_id = node_component(p.cut, g.nodes[node]);
  auto on_v = [&](int v) { return p.cut.component[v] == comp_id; };

  // 0-cells: original critical vertices on V.
  const std::vector<VertexClass> kinds = classify_all(s);
  std::vector<int> zero_of(r.vertex_count(), -1);
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!on_v(v) || !kinds[v].critical()) continue;
    zero_of[v] = static_cast<int>(p.zero_cells.size());
    p.zero_cells.push_back(v);
    p.zero_kinds.push_back(kinds[v]);
  }
  if (p.zero_cells.empty())
    fail(ErrorCode::kInternal, "level component of node " + std::to_string(node) +
                                   " carries no critical vertex");
  {
    std::vector<int> sorted = g.nodes[node].vertices;
    std::sort(sorted.begin(), sorted.end());
    check_internal(sorted == p.zero_cells, "critical vertices on V differ from the node's");
  }

  // V as a graph, neighbours in counter-clockwise link order.
  std::vector<std::vector<int>> v_nbrs(r.vertex_count());
  for (int v = 0; v < r.vertex_count(); ++v) {
    if (!on_v(v)) continue;
    for (int x : vertex_link(r, v))
      if (on_v(x)) v_nbrs[v].push_back(x);
    if (zero_of[v] < 0 && v_nbrs[v].size() != 2)
      fail(ErrorCode::kDegenerateLevel, "regular point of the level set has " +
                                            std::to_string(v_nbrs[v].size()) + " level edges");
  }

  // 1-cells by tracing arcs between 0-cells.
  std::set<std::pair<int, int>> used;
  auto mark = [&](int a, int b) { return used.insert(std::minmax(a, b)).second; };
  std::map<std::pair<int, int>, int> leaving;  // (tail vertex, next vertex) -> dart
  for (int w : p.zero_cells) {
    for (int x : v_nbrs[w]) {
      if (!mark(w, x)) continue;
      std::vector<int> path{w, x};
      while (zero_of[path.back()] < 0) {
        int cur = path.back(), prev = path[path.size() - 2];
        int next = v_nbrs[cur][0] == prev ? v_nbrs[cur][1] : v_nbrs[cur][0];
        check_internal(mark(cur, next), "level arc revisits an edge");
        path.push_back(next);
      }
      // Orient so that f > c lies on the left.
      int left = third_vertex(r.triangles()[triangle_left_of(r, path[0], path[1])], path[0], path[1]);
      int right = third_vertex(r.triangles()[triangle_left_of(r, path[1], path[0])], path[0], path[1]);
      int ls = side(r.value(left), c), rs = side(r.value(right), c);
      if (ls == rs)
        fail(ErrorCode::kDegenerateLevel, "level arc with both sides on one side of the level");
      if (ls < 0) std::reverse(path.begin(), path.end());
      OneCell e;
      e.start = zero_of[path.front()];
      e.end = zero_of[path.back()];
      e.path = std::move(path);
      const int id = static_cast<int>(p.one_cells.size());
      leaving[{e.path[0], e.path[1]}] = 2 * id;
      leaving[{e.path.back(), e.path[e.path.size() - 2]}] = 2 * id + 1;
      p.one_cells.push_back(std::move(e));
    }
  }
  for (int v = 0; v < r.vertex_count(); ++v)
    for (int x : v_nbrs[v])
      if (!used.count(std::minmax(v, x)))
        fail(ErrorCode::kInternal, "level set contains a circle without critical vertices");

  // Rotation at each 0-cell.
  p.rotation.assign(p.dart_count(), -1);
  for (int w : p.zero_cells) {
    std::vector<int> darts;
    for (int x : v_nbrs[w]) darts.push_back(leaving.at({w, x}));
    for (std::size_t i = 0; i < darts.size(); ++i)
      p.rotation[darts[i]] = darts[(i + 1) % darts.size()];
  }

  // 2-cells.
  const LevelComplement comp = level_complement(p.cut, comp_id);
  const std::vector<Branch> branches = branches_at(g, node);
  const BranchLookup lookup(g, branches);
  const std::vector<int> region_branch = region_branches(s, g, p.cut, comp, lookup);
  if (comp.region_count != static_cast<int>(branches.size()))
    fail(ErrorCode::kInternal, "complement regions do not match the branches");
  p.two_cells.resize(comp.region_count);
  for (int t = 0; t < r.triangle_count(); ++t) p.two_cells[comp.region[t]].triangles.push_back(t);
  for (int k = 0; k < comp.region_count; ++k) {
    TwoCell& cell = p.two_cells[k];
    const Branch& br = branches[region_branch[k]];
    cell.branch = region_branch[k];
    cell.entry_edge = br.entry_edge;
    cell.above = g.nodes[g.other_end(br.entry_edge, node)].level > c;
    cell.euler = comp.euler[k];
    cell.signature = std::string(cell.above ? "+" : "-") + subtree_signature(g, node, br.entry_edge);
    if (cell.euler != 1)
      fail(ErrorCode::kHypothesisViolation,
           "complement component " + std::to_string(k) + " has Euler characteristic " +
               std::to_string(cell.euler));
  }
  for (OneCell& e : p.one_cells) {
    e.up = comp.region[triangle_left_of(r, e.path[0], e.path[1])];
    e.down = comp.region[triangle_left_of(r, e.path[1], e.path[0])];
    check_internal(p.two_cells[e.up].above && !p.two_cells[e.down].above,
                   "one-cell sides disagree with the Reeb branch directions");
  }

  // Boundary cycles; each 2-cell is a disk, so it has exactly one.
  std::vector<bool> seen(p.dart_count(), false);
  for (int d = 0; d < p.dart_count(); ++d) {
    if (seen[d]) continue;
    const int face = p.left_face(d);
    check_internal(p.two_cells[face].boundary.empty(), "2-cell with several boundary cycles");
    for (int x = d; !seen[x]; x = p.face_next(x)) {
      check_internal(p.left_face(x) == face, "boundary cycle changes face");
      seen[x] = true;
      p.two_cells[face].boundary.push_back(x);
    }
  }
  for (const TwoCell& cell : p.two_cells)
    check_internal(!cell.boundary.empty(), "2-cell without boundary");

  // Incidence matrices.
  ChainComplex& cx = p.complex;
  cx.n0 = static_cast<int>(p.zero_cells.size());
  cx.n1 = static_cast<int>(p.one_cells.size());
  cx.n2 = static_cast<int>(p.two_cells.size());
  cx.d1 = IntMatrix(cx.n0, cx.n1);
  cx.d2 = IntMatrix(cx.n1, cx.n2);
  for (int e = 0; e < cx.n1; ++e) {
    cx.d1(p.one_cells[e].end, e) += 1;
    cx.d1(p.one_cells[e].start, e) -= 1;
    cx.d2(e, p.one_cells[e].up) += 1;
    cx.d2(e, p.one_cells[e].down) -= 1;
  }
  check_internal(cx.n0 - cx.n1 + cx.n2 == 0, "cell counts do not give Euler characteristic 0");
  return p;
}

}  // namespace krtorus
