#pragma once

#include <array>
#include <vector>

#include "krtorus/homology.hpp"
#include "krtorus/partition.hpp"

namespace krtorus {

/// Extends psi(seed) = image across the rotation and the dart reversal.
/// Returns the dart permutation, or an empty vector on a contradiction.
std::vector<int> propagate_darts(const CellPartition& p, int seed, int image);

/// Cell maps induced by a dart permutation; 2-cell signs are read off d2.
CellAutomorphism automorphism_from_darts(const CellPartition& p, const std::vector<int>& darts);

/// Orientation-preserving cellular automorphisms that preserve f-data on
/// every cell, act trivially on H1 and fix no cell unless they are the
/// identity. Sorted; the identity comes first.
std::vector<CellAutomorphism> enumerate_symmetries(const CellPartition& p);

/// Finite abelian group Z_n x Z_nm acting freely on the 2-cells.
struct SymmetryGroup {
  std::vector<CellAutomorphism> elements;
  /// table[a][b] = index of elements[a] o elements[b].
  std::vector<std::vector<int>> table;
  int n = 1;
  int m = 1;
  int L = 0;  // element index of order n
  int M = 0;  // element index of order n*m
  int r = 0;
  /// two-cell id of D_ijk at (i * n + j) * nm + k, with i counted from 0.
  std::vector<int> orbit_table;
  /// (i, j, k) of every two-cell.
  std::vector<std::array<int, 3>> cell_index;

  int order() const { return static_cast<int>(elements.size()); }
  int nm() const { return n * m; }
  int cell(int i, int j, int k) const { return orbit_table[(i * n + j) * nm() + k]; }
  int element_order(int a) const;
  /// Index of L^j M^k.
  int power_product(int j, int k) const;
};

/// Checks closure, inverses, associativity and commutativity, then reads the
/// invariant factors off the Smith form of the relation matrix of a greedy
/// generating set. Throws kHypothesisViolation for a non-abelian group or
/// more than two invariant factors, kInternal for a non-group.
SymmetryGroup group_structure(std::vector<CellAutomorphism> elements);

/// Fills r and the orbit table: D_i00 is the lowest cell id of orbit i and
/// D_ijk = M^k L^j D_i00.
void index_orbits(SymmetryGroup& group, const CellPartition& p);

SymmetryGroup analyze_symmetry(const CellPartition& p);

/// Tries to extend the action of `a` on 1-cell 0 to a simplicial
/// automorphism of the refined mesh that preserves orientation and every
/// vertex value. Success witnesses `a` as a symmetry of f itself rather
/// than of its combinatorial data only.
bool realized_by_field_symmetry(const CellPartition& p, const CellAutomorphism& a);

}  // namespace krtorus
