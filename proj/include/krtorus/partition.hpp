#pragma once

#include <string>
#include <vector>

#include "krtorus/homology.hpp"
#include "krtorus/reeb.hpp"
#include "krtorus/surface.hpp"

namespace krtorus {

/// The mesh refined so that the level set {f = c} is a subgraph: every edge
/// crossing c gets a new vertex at value c, and crossed triangles are split.
/// Original vertices keep their ids; crossing points are appended.
struct LevelCut {
  Rational level;
  SurfaceField refined;
  /// Original triangle each refined triangle came from.
  std::vector<int> parent_triangle;
  /// Level-set component of each refined vertex, -1 off the level.
  std::vector<int> component;
  int component_count = 0;
};

/// Throws kDegenerateLevel when a triangle lies flat on the level.
LevelCut cut_at_level(const SurfaceField& surface, const Rational& level);

/// Connected components of the refined surface minus one level component.
struct LevelComplement {
  std::vector<int> region;  // per refined triangle
  int region_count = 0;
  /// Euler characteristic of each open region by counting its open cells.
  std::vector<int> euler;
};

LevelComplement level_complement(const LevelCut& cut, int component);

/// Euler characteristic of p_f^-1(B) for every branch B at `node`, in
/// branches_at order. Counted on the refined mesh and, independently, as the
/// PL index sum of the critical vertices inside the branch; a disagreement
/// throws kInternal.
std::vector<int> branch_euler(const SurfaceField& surface, const ReebGraph& graph, int node);

/// Nodes whose branches all have Euler characteristic 1.
std::vector<int> special_vertex_candidates(const SurfaceField& surface, const ReebGraph& graph);

/// The unique candidate. Throws kNoSpecialVertex when there is none and
/// kInternal when there are several.
int find_special_vertex(const SurfaceField& surface, const ReebGraph& graph);

/// A maximal arc of V between 0-cells, oriented with f > c on its left.
struct OneCell {
  std::vector<int> path;  // refined vertex ids, start to end
  int start = -1;         // 0-cell ids
  int end = -1;
  int up = -1;            // 2-cell on the f > c side
  int down = -1;          // 2-cell on the f < c side
};

struct TwoCell {
  std::vector<int> triangles;  // refined triangle ids
  int branch = -1;             // index into branches_at(graph, node)
  int entry_edge = -1;         // Reeb edge joining the branch to the node
  bool above = false;          // the branch leaves the node upwards
  int euler = 0;
  /// f-data compared by symmetries: side plus the level-labelled subtree.
  std::string signature;
  /// Boundary cycle as darts with this cell on their left.
  std::vector<int> boundary;
};

/// CW partition of the torus by V = p_f^-1(v). Darts: 2e runs along one-cell
/// e from start to end, 2e+1 runs backwards.
struct CellPartition {
  int node = -1;
  Rational level;
  LevelCut cut;
  std::vector<int> zero_cells;  // refined vertex ids (original critical vertices)
  std::vector<VertexClass> zero_kinds;
  std::vector<OneCell> one_cells;
  std::vector<TwoCell> two_cells;
  ChainComplex complex;
  /// Next dart counter-clockwise around the tail vertex.
  std::vector<int> rotation;

  int dart_count() const { return 2 * static_cast<int>(one_cells.size()); }
  int tail(int dart) const;
  int head(int dart) const;
  int left_face(int dart) const;
  /// Next dart along the boundary of left_face(dart).
  int face_next(int dart) const;
};

/// Throws kInternal when the node level is not a connected graph through a
/// critical vertex, kDegenerateLevel on non-generic level sets, and
/// kHypothesisViolation when some complement component is not a disk.
CellPartition build_partition(const SurfaceField& surface, const ReebGraph& graph, int node);

}  // namespace krtorus
