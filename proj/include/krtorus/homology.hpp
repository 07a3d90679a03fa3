#pragma once

#include <array>
#include <string>
#include <vector>

#include "krtorus/surface.hpp"

namespace krtorus {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  /// Parses "2,2;0,4" (rows separated by ';').
  static IntMatrix parse(std::string_view text);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Integer& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Integer& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  /// "[[2,2],[0,4]]"
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

/// U * A * V = D with U, V unimodular, D diagonal, d1 | d2 | ... and the
/// nonzero diagonal entries positive. Inverses are tracked alongside.
struct SnfResult {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  int rank = 0;

  std::vector<Integer> diagonal() const;
};

/// Pivot rule: smallest nonzero |entry| of the remaining block, ties broken
/// by row-major position. Fully deterministic.
SnfResult smith_normal_form(const IntMatrix& a);

/// Structure of Z^rows / A Z^cols.
struct CokernelInvariants {
  /// Invariant factors greater than one, in divisibility order.
  std::vector<Integer> factors;
  int free_rank = 0;
};

CokernelInvariants cokernel_invariants(const IntMatrix& a);

/// For a 2x2 matrix of full rank: the pair (n, nm) with Z^2 / A Z^2 ~ Z_n x
/// Z_nm, keeping a leading 1 (so diag(1, 4) gives (1, 4)).
std::array<Integer, 2> lattice_quotient_pair(const IntMatrix& a);

/// Integer chain complex C2 -> C1 -> C0 of a 2-dimensional cell complex.
struct ChainComplex {
  int n0 = 0, n1 = 0, n2 = 0;
  IntMatrix d1;  // n0 x n1
  IntMatrix d2;  // n1 x n2
};

/// Simplicial chain complex of a triangulated surface (edges oriented from
/// the smaller vertex index).
ChainComplex simplicial_chain_complex(const SurfaceField& surface);

struct Homology {
  std::array<int, 3> betti{};
  std::array<std::vector<Integer>, 3> torsion;
  /// Cycles in C1 whose classes form a basis of the free part of H1.
  std::vector<std::vector<Integer>> h1_basis;

  /// Coordinates of a 1-cycle in h1_basis (free part only).
  std::vector<Integer> h1_coordinates(const std::vector<Integer>& cycle) const;

  // Change-of-basis data behind h1_coordinates.
  IntMatrix cycle_coords;  // V1^-1 restricted to the kernel rows
  IntMatrix adapt;         // U2
  int boundary_rank = 0;
};

/// Throws kInternal when d1 * d2 != 0.
Homology cellular_homology(const ChainComplex& complex);

/// Cell permutation with orientation signs; element x of dimension k goes to
/// cell k_map[x] with sign k_sign[x].
struct CellAutomorphism {
  std::vector<int> zero;
  std::vector<int> one;
  std::vector<int> one_sign;
  std::vector<int> two;
  std::vector<int> two_sign;

  static CellAutomorphism identity(int n0, int n1, int n2);
  bool is_identity() const;
  /// (*this) after `rhs`: x -> this(rhs(x)).
  CellAutomorphism compose(const CellAutomorphism& rhs) const;
  CellAutomorphism inverse() const;
  /// Commutes with the boundary maps, signs included.
  bool is_chain_map(const ChainComplex& complex) const;

  friend bool operator==(const CellAutomorphism&, const CellAutomorphism&) = default;
  friend auto operator<=>(const CellAutomorphism&, const CellAutomorphism&) = default;
};

/// Matrix of the induced map on H1 ~ Z^b1 in the basis of cellular_homology.
IntMatrix h1_action(const ChainComplex& complex, const Homology& homology,
                    const CellAutomorphism& a);
IntMatrix h1_action(const ChainComplex& complex, const CellAutomorphism& a);

}  // namespace krtorus
