#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace krtorus {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Vertex indices of one triangle, counter-clockwise.
using Triangle = std::array<int, 3>;
using Point3 = std::array<double, 3>;

/// Parses "3", "-0.25", "1.5e-3" or "7/8" into an exact rational. Decimal
/// text is converted exactly, so no rounding happens on input.
Rational parse_scalar(std::string_view text);

/// Shortest exact text: integer, "p/q", never a lossy decimal.
std::string format_scalar(const Rational& value);

double to_double(const Rational& value);

/// Triangulated closed surface carrying one scalar per vertex.
///
/// Vertices are totally ordered by (value, index); every algorithm in the
/// library compares vertices through rank(), which makes any input generic.
class SurfaceField {
 public:
  SurfaceField() = default;
  SurfaceField(std::vector<Rational> values, std::vector<Triangle> triangles,
               std::optional<std::vector<Point3>> coords = std::nullopt);

  int vertex_count() const { return static_cast<int>(values_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Rational& value(int v) const { return values_[v]; }
  const std::vector<Rational>& values() const { return values_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::optional<std::vector<Point3>>& coords() const { return coords_; }

  /// Unique undirected edges, each stored with the smaller index first,
  /// sorted lexicographically.
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  /// Index into edges() or -1.
  int edge_index(int a, int b) const;

  /// Triangles incident to a vertex, in increasing index order.
  const std::vector<int>& incident_triangles(int v) const {
    return incident_[v];
  }

  /// Position of v in the (value, index) order.
  int rank(int v) const { return rank_[v]; }
  /// Vertices sorted by (value, index).
  const std::vector<int>& order() const { return order_; }
  bool below(int a, int b) const { return rank_[a] < rank_[b]; }

  int euler_characteristic() const {
    return vertex_count() - edge_count() + triangle_count();
  }

 private:
  std::vector<Rational> values_;
  std::vector<Triangle> triangles_;
  std::optional<std::vector<Point3>> coords_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> rank_;
  std::vector<int> order_;
};

/// Reads the `torus-field v1` text format.
SurfaceField load_surface(std::istream& in);
SurfaceField load_surface_text(std::string_view text);

/// Writes the `torus-field v1` text format. Values are written exactly.
std::string write_surface(const SurfaceField& surface);

struct SurfaceTopology {
  int chi = 0;
  int genus = 0;
};

/// Checks that the triangulation is a connected closed orientable surface
/// with coherent orientation and manifold vertex links.
SurfaceTopology validate_closed_orientable(const SurfaceField& surface);

/// Neighbours of v in counter-clockwise cyclic order. Requires a closed
/// manifold neighbourhood; throws kNonManifold otherwise.
std::vector<int> vertex_link(const SurfaceField& surface, int v);

enum class VertexKind { kMinimum, kRegular, kSaddle, kMaximum };

std::string_view vertex_kind_name(VertexKind kind);

struct VertexClass {
  VertexKind kind = VertexKind::kRegular;
  /// k for a k-fold saddle, 0 otherwise.
  int multiplicity = 0;

  /// PL index: 1 for extrema, -k for a k-fold saddle, 0 for regular.
  int index() const;
  bool critical() const { return kind != VertexKind::kRegular; }

  friend bool operator==(const VertexClass&, const VertexClass&) = default;
};

/// Lower-link rule: counts the runs of lower and upper neighbours around
/// the link cycle.
VertexClass classify_vertex(const SurfaceField& surface, int v);

std::vector<VertexClass> classify_all(const SurfaceField& surface);

/// Sum of PL indices over all vertices; equals chi on a valid surface.
int total_index(const SurfaceField& surface);

}  // namespace krtorus
