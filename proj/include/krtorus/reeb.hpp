#pragma once

#include <string>
#include <vector>

#include "krtorus/surface.hpp"

namespace krtorus {

struct ReebNode {
  Rational level;
  /// Critical vertices whose level component is this node, by rank.
  std::vector<int> vertices;
  std::vector<VertexClass> kinds;
  bool is_critical = true;

  int index_sum() const;
};

/// Edge between two nodes; level(lower) < level(upper) strictly.
struct ReebEdge {
  int lower = -1;
  int upper = -1;
};

/// Where a point of the surface lands in the graph.
struct ReebLocation {
  bool on_node = true;
  int id = -1;

  friend bool operator==(const ReebLocation&, const ReebLocation&) = default;
};

/// Kronrod-Reeb graph of a field: level-set components collapsed to
/// points. Nodes are critical components; levels on the input scale.
struct ReebGraph {
  std::vector<ReebNode> nodes;
  std::vector<ReebEdge> edges;
  /// Triangles whose barycentre lies in each edge's band / node component.
  /// Together they partition the triangle set.
  std::vector<std::vector<int>> band_map;
  std::vector<std::vector<int>> node_map;
  std::vector<ReebLocation> vertex_location;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  std::vector<int> incident_edges(int node) const;
  int degree(int node) const { return static_cast<int>(incident_edges(node).size()); }
  int other_end(int edge, int node) const;
  bool connected() const;
  /// First Betti number E - N + 1 (graph is connected).
  int betti1() const { return edge_count() - node_count() + 1; }
};

/// Builds the graph by band decomposition: level-set components at every
/// critical rank and union-find over the triangles of each band between
/// consecutive critical ranks. Arcs of zero height (both ends at the same
/// input value) are contracted, so equal-level critical vertices on one
/// level component share a node. Requires a validated closed surface.
ReebGraph compute_reeb(const SurfaceField& surface);

bool is_tree(const ReebGraph& graph);

/// Deterministic Graphviz text.
std::string reeb_to_dot(const ReebGraph& graph);

/// Components of the graph with `node` removed. result[k] lists the nodes of
/// the branch entered through incident_edges(node)[k]; the edge list of
/// each branch includes that entering edge.
struct Branch {
  int entry_edge = -1;
  std::vector<int> nodes;
  std::vector<int> edges;
};
std::vector<Branch> branches_at(const ReebGraph& graph, int node);

/// Canonical text of the level-labelled subtree hanging below `edge` when
/// the graph is rooted at `root`. Equal strings mean isomorphic subtrees
/// with identical levels and vertex kinds.
std::string subtree_signature(const ReebGraph& graph, int root, int edge);

}  // namespace krtorus
