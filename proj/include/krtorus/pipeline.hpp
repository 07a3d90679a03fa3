#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "krtorus/partition.hpp"
#include "krtorus/symmetry.hpp"
#include "krtorus/wreath.hpp"

namespace krtorus {

/// Symbolic description of the orbit fundamental group.
struct GroupExpr {
  enum class Kind { kTrivial, kAtom, kDirectProduct, kWreathOver, kFreeAbelian };

  Kind kind = Kind::kTrivial;
  int atom = 0;                 // kAtom: 1-based disk orbit id
  std::string kr_subtree;       // kAtom: Reeb subtree of the disk
  int n = 1, nm = 1;            // kWreathOver: grid Z_n x Z_nm
  int rank = 0;                 // kFreeAbelian
  std::vector<GroupExpr> children;

  /// "(A_1 x A_2) wr[Z_1 x Z_2] Z^2", "(A_1 x A_2) x Z^2", "A_1 wr[...] Z^2".
  std::string to_string() const;

  friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
};

/// (prod_i A_i) wr_{Z_n x Z_nm} Z^2, or (prod_i A_i) x Z^2 when n = nm = 1.
GroupExpr orbit_group_expr(int n, int nm, const std::vector<std::string>& atom_subtrees);

/// A closed disk D_i00 cut out of the surface slightly inside its 2-cell.
struct DiskField {
  int id = 0;                   // orbit id i, 1-based
  int cell = -1;                // two-cell id of D_i00
  Rational cut_level;
  std::vector<Rational> values;
  std::vector<Triangle> triangles;
  /// Boundary loop on cut_level, counter-clockwise seen from inside.
  std::vector<int> boundary;

  int euler_characteristic() const;
  friend bool operator==(const DiskField&, const DiskField&) = default;
};

struct AnalysisReport {
  int vertices = 0, triangles = 0, chi = 0, genus = 0;
  int reeb_nodes = 0, reeb_edges = 0, reeb_b1 = 0;
  bool is_tree = false;

  int special_node = -1;
  Rational special_level;
  int zero_cells = 0, one_cells = 0, two_cells = 0;
  std::vector<int> branch_chis;

  int order = 1, n = 1, m = 1, r = 0;
  std::vector<int> generator_L, generator_M;  // actions on 2-cells
  /// Every symmetry extends to a value-preserving automorphism of the mesh.
  /// False flags a group that may be larger than the symmetries of f.
  bool realized = true;
  /// Rows (i, j, k, cell) with i 1-based.
  std::vector<std::array<int, 4>> orbit_table;

  GroupExpr expr;
  std::vector<DiskField> disks;

  int nm() const { return n * m; }
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Full pipeline. Throws kNotTorus, kNotTree and the diagnostics of the
/// individual stages.
AnalysisReport analyze(const SurfaceField& surface);

/// Disk for orbit `i` (1-based): the part of D_i00 beyond the level c +- d/2,
/// where d is the smallest nonzero |f - c| on the cell. Throws kRange for an
/// orbit id outside [1, r].
DiskField extract_disk_field(const CellPartition& p, const SymmetryGroup& g, int i);

struct VerificationCheck {
  std::string name;   // "a", "b" or "c"
  std::string title;
  bool passed = true;
  std::string detail;
};

struct VerificationRecord {
  std::string atoms;  // product of the supplied atoms
  int n = 1, nm = 1, r = 0;
  std::int64_t sampled_triples = 0;
  bool exhaustive = false;
  std::int64_t kernel_size = 0;
  std::int64_t expected_kernel_size = 0;
  std::vector<VerificationCheck> checks;

  bool passed() const;
  const VerificationCheck& check(const std::string& name) const;
};

/// Instantiates W = (prod_i A_i) wr_{Z_n x Z_nm} Z^2 with concrete finite
/// atoms and checks (a) the exact sequence 1 -> Map -> W -> Z^2 -> 1 with
/// the group axioms of W, (b) the lattice sequence Z^2 -q-> Z^2 -> Z_n x
/// Z_nm, (c) the kernel of the finite truncation and the bijectivity of tau.
/// `rule` is passed to the wreath product. Throws kGroupMismatch when the
/// atom count differs from r.
VerificationRecord verify_extension(const AnalysisReport& report,
                                    const std::vector<BaseGroupPtr>& atoms,
                                    WreathProduct::ShiftRule rule = {});

/// Comma-separated atom list such as "Z2,Z3".
std::vector<BaseGroupPtr> parse_atoms(const std::string& text);

}  // namespace krtorus
