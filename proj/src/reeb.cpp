#include "krtorus/reeb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "krtorus/error.hpp"
#include "krtorus/union_find.hpp"

namespace krtorus {

int ReebNode::index_sum() const {
  int sum = 0;
  for (const VertexClass& k : kinds) sum += k.index();
  return sum;
}

std::vector<int> ReebGraph::incident_edges(int node) const {
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (edges[e].lower == node || edges[e].upper == node) out.push_back(e);
  return out;
}

int ReebGraph::other_end(int edge, int node) const {
  return edges[edge].lower == node ? edges[edge].upper : edges[edge].lower;
}

bool ReebGraph::connected() const {
  if (nodes.empty()) return false;
  UnionFind uf(nodes.size());
  for (const ReebEdge& e : edges) uf.join(e.lower, e.upper);
  for (int n = 1; n < node_count(); ++n)
    if (!uf.joined(0, n)) return false;
  return true;
}

namespace {

/// Per-edge incident triangles of a closed surface.
std::vector<std::array<int, 2>> edge_triangles(const SurfaceField& s) {
  std::vector<std::array<int, 2>> out(s.edge_count(), {-1, -1});
  for (int t = 0; t < s.triangle_count(); ++t) {
    const Triangle& tri = s.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      int e = s.edge_index(tri[k], tri[(k + 1) % 3]);
      (out[e][0] < 0 ? out[e][0] : out[e][1]) = t;
    }
  }
  return out;
}

struct TriRange {
  int lo;
  int hi;
};

}  // namespace

ReebGraph compute_reeb(const SurfaceField& s) {
  const int nv = s.vertex_count();
  const int nt = s.triangle_count();
  if (s.value(s.order().front()) == s.value(s.order().back()))
    fail(ErrorCode::kConstantField, "field is constant; its Reeb graph is a single point");

  const std::vector<VertexClass> classes = classify_all(s);
  std::vector<int> crit;
  for (int v : s.order())
    if (classes[v].critical()) crit.push_back(v);
  const int ns = static_cast<int>(crit.size());
  std::vector<int> crit_rank(ns);
  for (int t = 0; t < ns; ++t) crit_rank[t] = s.rank(crit[t]);

  const auto etri = edge_triangles(s);
  std::vector<TriRange> range(nt);
  for (int t = 0; t < nt; ++t) {
    const Triangle& tri = s.triangles()[t];
    int r0 = s.rank(tri[0]), r1 = s.rank(tri[1]), r2 = s.rank(tri[2]);
    range[t] = {std::min({r0, r1, r2}), std::max({r0, r1, r2})};
  }

  // Segments: connected components of each band (open slab between two
  // consecutive critical ranks), numbered globally.
  std::vector<std::vector<int>> seg_of(std::max(ns - 1, 0), std::vector<int>(nt, -1));
  int seg_count = 0;
  for (int b = 0; b + 1 < ns; ++b) {
    const int lo = crit_rank[b], hi = crit_rank[b + 1];
    auto in_band = [&](int t) { return range[t].hi > lo && range[t].lo < hi; };
    UnionFind uf(nt);
    for (int e = 0; e < s.edge_count(); ++e) {
      auto [t0, t1] = etri[e];
      if (!in_band(t0) || !in_band(t1)) continue;
      int ra = s.rank(s.edges()[e][0]), rb = s.rank(s.edges()[e][1]);
      if (std::max(ra, rb) > lo && std::min(ra, rb) < hi) uf.join(t0, t1);
    }
    std::map<std::size_t, int> root_seg;
    for (int t = 0; t < nt; ++t) {
      if (!in_band(t)) continue;
      auto [it, inserted] = root_seg.emplace(uf.find(t), seg_count);
      if (inserted) ++seg_count;
      seg_of[b][t] = it->second;
    }
  }

  // Stitch segments across critical levels and record node attachments.
  UnionFind arc_uf(seg_count);
  std::vector<int> seg_bottom(seg_count, -1), seg_top(seg_count, -1);
  // Triangle location in the perturbed graph: node t (>= 0) or segment.
  struct TriLoc {
    bool node = false;
    int id = -1;
  };
  std::vector<TriLoc> tri_loc(nt);

  for (int t = 0; t < ns; ++t) {
    const int c = crit[t];
    const int R = crit_rank[t];
    const int E = s.edge_count();
    UnionFind contour(E + 1);  // element E stands for the vertex c
    auto crosses = [&](int a, int b) { return (s.rank(a) < R) != (s.rank(b) < R); };
    std::vector<int> crossing_tris;
    for (int tr = 0; tr < nt; ++tr) {
      const Triangle& tri = s.triangles()[tr];
      int k = tri[0] == c ? 0 : tri[1] == c ? 1 : tri[2] == c ? 2 : -1;
      if (k >= 0) {
        int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
        if (crosses(a, b)) contour.join(s.edge_index(a, b), E);
        continue;
      }
      if (!(range[tr].lo < R && R < range[tr].hi)) continue;
      crossing_tris.push_back(tr);
      int found[2], nf = 0;
      for (int j = 0; j < 3; ++j) {
        int a = tri[j], b = tri[(j + 1) % 3];
        if (crosses(a, b)) found[nf++] = s.edge_index(a, b);
      }
      check_internal(nf == 2, "level crossing triangle without two crossing edges");
      contour.join(found[0], found[1]);
    }
    const std::size_t croot = contour.find(E);

    for (int tr : s.incident_triangles(c)) {
      if (t > 0 && range[tr].lo < R) seg_top[seg_of[t - 1][tr]] = t;
      if (t + 1 < ns && range[tr].hi > R) seg_bottom[seg_of[t][tr]] = t;
    }
    for (int tr : crossing_tris) {
      const Triangle& tri = s.triangles()[tr];
      int e = -1;
      for (int j = 0; j < 3 && e < 0; ++j)
        if (crosses(tri[j], tri[(j + 1) % 3])) e = s.edge_index(tri[j], tri[(j + 1) % 3]);
      const bool on_critical = contour.find(e) == croot;
      if (!on_critical) arc_uf.join(seg_of[t - 1][tr], seg_of[t][tr]);
      const int r3 = s.rank(tri[0]) + s.rank(tri[1]) + s.rank(tri[2]);
      if (r3 == 3 * R) tri_loc[tr] = on_critical ? TriLoc{true, t} : TriLoc{false, seg_of[t][tr]};
    }
    for (int tr : s.incident_triangles(c)) {
      const Triangle& tri = s.triangles()[tr];
      if (s.rank(tri[0]) + s.rank(tri[1]) + s.rank(tri[2]) == 3 * R) tri_loc[tr] = {true, t};
    }
  }

  // Barycentres strictly inside a band.
  for (int tr = 0; tr < nt; ++tr) {
    if (tri_loc[tr].id >= 0) continue;
    const Triangle& tri = s.triangles()[tr];
    const int r3 = s.rank(tri[0]) + s.rank(tri[1]) + s.rank(tri[2]);
    auto it = std::upper_bound(crit_rank.begin(), crit_rank.end(), r3,
                               [](int x, int r) { return x < 3 * r; });
    const int b = static_cast<int>(it - crit_rank.begin()) - 1;
    check_internal(b >= 0 && b + 1 < ns && seg_of[b][tr] >= 0, "triangle outside every band");
    tri_loc[tr] = {false, seg_of[b][tr]};
  }

  // Arcs of the perturbed graph.
  std::map<std::size_t, int> arc_of_root;
  std::vector<int> arc_of_seg(seg_count);
  std::vector<std::array<int, 2>> arcs;  // bottom node, top node
  for (int g = 0; g < seg_count; ++g) {
    auto [it, inserted] = arc_of_root.emplace(arc_uf.find(g), static_cast<int>(arcs.size()));
    if (inserted) arcs.push_back({-1, -1});
    const int a = it->second;
    arc_of_seg[g] = a;
    if (seg_bottom[g] >= 0) {
      check_internal(arcs[a][0] < 0, "arc with two bottom attachments");
      arcs[a][0] = seg_bottom[g];
    }
    if (seg_top[g] >= 0) {
      check_internal(arcs[a][1] < 0, "arc with two top attachments");
      arcs[a][1] = seg_top[g];
    }
  }
  for (const auto& a : arcs) check_internal(a[0] >= 0 && a[1] >= 0, "dangling Reeb arc");

  // Contract arcs of zero height.
  UnionFind node_uf(ns);
  for (const auto& a : arcs)
    if (s.value(crit[a[0]]) == s.value(crit[a[1]])) node_uf.join(a[0], a[1]);
  std::vector<int> final_node(ns, -1);
  ReebGraph g;
  {
    std::map<std::size_t, int> root_id;
    for (int t = 0; t < ns; ++t) {  // crit is rank ordered, so ids follow (level, rank)
      auto [it, inserted] = root_id.emplace(node_uf.find(t), g.node_count());
      if (inserted) {
        ReebNode node;
        node.level = s.value(crit[t]);
        g.nodes.push_back(node);
      }
      final_node[t] = it->second;
      g.nodes[it->second].vertices.push_back(crit[t]);
      g.nodes[it->second].kinds.push_back(classes[crit[t]]);
    }
  }
  std::vector<ReebLocation> arc_loc(arcs.size());
  {
    std::vector<std::tuple<int, int, int>> keyed;
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
      int lo = final_node[arcs[a][0]], hi = final_node[arcs[a][1]];
      if (lo == hi) {
        arc_loc[a] = {true, lo};
      } else {
        check_internal(g.nodes[lo].level < g.nodes[hi].level, "non-monotone Reeb arc");
        keyed.emplace_back(lo, hi, a);
      }
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto [lo, hi, a] : keyed) {
      arc_loc[a] = {false, g.edge_count()};
      g.edges.push_back({lo, hi});
    }
  }

  g.node_map.assign(g.nodes.size(), {});
  g.band_map.assign(g.edges.size(), {});
  for (int tr = 0; tr < nt; ++tr) {
    ReebLocation loc = tri_loc[tr].node ? ReebLocation{true, final_node[tri_loc[tr].id]}
                                        : arc_loc[arc_of_seg[tri_loc[tr].id]];
    (loc.on_node ? g.node_map[loc.id] : g.band_map[loc.id]).push_back(tr);
  }

  g.vertex_location.assign(nv, {});
  std::vector<int> crit_index(nv, -1);
  for (int t = 0; t < ns; ++t) crit_index[crit[t]] = t;
  for (int v = 0; v < nv; ++v) {
    if (crit_index[v] >= 0) {
      g.vertex_location[v] = {true, final_node[crit_index[v]]};
      continue;
    }
    const int r = s.rank(v);
    auto it = std::upper_bound(crit_rank.begin(), crit_rank.end(), r);
    const int b = static_cast<int>(it - crit_rank.begin()) - 1;
    const int tr = s.incident_triangles(v).front();
    g.vertex_location[v] = arc_loc[arc_of_seg[seg_of[b][tr]]];
  }
  return g;
}

bool is_tree(const ReebGraph& graph) {
  return graph.connected() && graph.edge_count() == graph.node_count() - 1;
}

std::string reeb_to_dot(const ReebGraph& graph) {
  std::ostringstream out;
  out << "graph reeb {\n";
  out << "  node [shape=circle];\n";
  for (int n = 0; n < graph.node_count(); ++n) {
    const ReebNode& node = graph.nodes[n];
    out << "  n" << n << " [label=\"" << n << "\\nf=" << format_scalar(node.level);
    for (const VertexClass& k : node.kinds) {
      out << "\\n" << vertex_kind_name(k.kind);
      if (k.multiplicity > 1) out << "(" << k.multiplicity << ")";
    }
    out << "\"" << (node.is_critical ? "" : ", style=dashed") << "];\n";
  }
  for (int e = 0; e < graph.edge_count(); ++e)
    out << "  n" << graph.edges[e].lower << " -- n" << graph.edges[e].upper << " [label=\"e"
        << e << "\"];\n";
  out << "}\n";
  return out.str();
}

std::vector<Branch> branches_at(const ReebGraph& graph, int node) {
  std::vector<Branch> out;
  std::vector<bool> seen_node(graph.nodes.size(), false);
  std::vector<bool> seen_edge(graph.edges.size(), false);
  seen_node[node] = true;
  for (int entry : graph.incident_edges(node)) {
    if (seen_edge[entry]) continue;  // parallel edge already swept by a cycle
    Branch br;
    br.entry_edge = entry;
    std::vector<int> stack{graph.other_end(entry, node)};
    seen_edge[entry] = true;
    br.edges.push_back(entry);
    if (stack.back() == node) stack.clear();
    else seen_node[stack.back()] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      br.nodes.push_back(u);
      for (int e : graph.incident_edges(u)) {
        if (seen_edge[e]) continue;
        seen_edge[e] = true;
        br.edges.push_back(e);
        int w = graph.other_end(e, u);
        if (!seen_node[w]) {
          seen_node[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(br.nodes.begin(), br.nodes.end());
    std::sort(br.edges.begin(), br.edges.end());
    out.push_back(std::move(br));
  }
  return out;
}

std::string subtree_signature(const ReebGraph& graph, int root, int edge) {
  std::function<std::string(int, int)> sig = [&](int node, int parent_edge) {
    const ReebNode& n = graph.nodes[node];
    std::vector<std::string> kinds;
    for (const VertexClass& k : n.kinds)
      kinds.push_back(std::string(vertex_kind_name(k.kind)) + std::to_string(k.multiplicity));
    std::sort(kinds.begin(), kinds.end());
    std::vector<std::string> children;
    for (int e : graph.incident_edges(node))
      if (e != parent_edge) children.push_back(sig(graph.other_end(e, node), e));
    std::sort(children.begin(), children.end());
    std::string out = "(" + format_scalar(n.level) + ":";
    for (const auto& k : kinds) out += k + ",";
    for (const auto& c : children) out += c;
    return out + ")";
  };
  return sig(graph.other_end(edge, root), edge);
}

}  // namespace krtorus
