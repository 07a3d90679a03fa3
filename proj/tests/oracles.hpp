#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// touches the band decomposition, the level cutting, or the map search.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "krtorus/surface.hpp"
#include "krtorus/union_find.hpp"

namespace oracle {

using krtorus::Rational;
using krtorus::SurfaceField;

/// Number of components of f^{-1}(level) for a level hit by no vertex.
inline int contour_count(const SurfaceField& s, const Rational& level) {
  const int ne = s.edge_count();
  auto crossing = [&](int a, int b) {
    return (s.value(a) < level) != (s.value(b) < level);
  };
  krtorus::UnionFind uf(ne);
  std::vector<bool> used(ne, false);
  for (const auto& tri : s.triangles()) {
    std::vector<int> hit;
    for (int k = 0; k < 3; ++k)
      if (crossing(tri[k], tri[(k + 1) % 3])) hit.push_back(s.edge_index(tri[k], tri[(k + 1) % 3]));
    if (hit.size() == 2) {
      uf.join(hit[0], hit[1]);
      used[hit[0]] = used[hit[1]] = true;
    }
  }
  std::set<std::size_t> roots;
  for (int e = 0; e < ne; ++e)
    if (used[e]) roots.insert(uf.find(e));
  return static_cast<int>(roots.size());
}

/// Midpoints between consecutive distinct vertex values.
inline std::vector<Rational> gap_levels(const SurfaceField& s) {
  std::vector<Rational> vals(s.values().begin(), s.values().end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) out.push_back((vals[i] + vals[i + 1]) / 2);
  return out;
}

/// Components of {f > c} plus components of {f < c}: for a PL field these
/// are spanned by the vertices strictly above (below) c.
inline int complement_components(const SurfaceField& s, const Rational& c) {
  krtorus::UnionFind uf(s.vertex_count());
  for (const auto& e : s.edges()) {
    int sa = s.value(e[0]) > c ? 1 : s.value(e[0]) < c ? -1 : 0;
    int sb = s.value(e[1]) > c ? 1 : s.value(e[1]) < c ? -1 : 0;
    if (sa != 0 && sa == sb) uf.join(e[0], e[1]);
  }
  std::set<std::size_t> roots;
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.value(v) != c) roots.insert(uf.find(v));
  return static_cast<int>(roots.size());
}

/// Number of level-set germs of {f = c} at a vertex on the level: one per
/// link neighbour on the level and one per link edge crossing it. Walks the
/// raw triangle list rather than any link helper.
inline int level_germs(const SurfaceField& s, int v, const Rational& c) {
  std::set<int> on_level;
  int crossings = 0;
  for (const auto& tri : s.triangles()) {
    int k = tri[0] == v ? 0 : tri[1] == v ? 1 : tri[2] == v ? 2 : -1;
    if (k < 0) continue;
    int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
    for (int x : {a, b})
      if (s.value(x) == c) on_level.insert(x);
    if ((s.value(a) < c && s.value(b) > c) || (s.value(a) > c && s.value(b) < c)) ++crossings;
  }
  return static_cast<int>(on_level.size()) + crossings;
}

/// Vertices on the level where four or more germs meet, and the total
/// germ count at those vertices.
inline std::array<int, 2> level_junctions(const SurfaceField& s, const Rational& c) {
  std::array<int, 2> out{0, 0};
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (s.value(v) != c) continue;
    int g = level_germs(s, v, c);
    if (g >= 4) {
      ++out[0];
      out[1] += g;
    }
  }
  return out;
}

/// Grid translations (dx, dy) of an n x n grid field that preserve every
/// vertex value exactly.
inline std::vector<std::array<int, 2>> preserving_translations(const SurfaceField& s, int n) {
  std::vector<std::array<int, 2>> out;
  for (int dy = 0; dy < n; ++dy)
    for (int dx = 0; dx < n; ++dx) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j)
        for (int i = 0; i < n && ok; ++i)
          ok = s.value(i + n * j) == s.value((i + dx) % n + n * ((j + dy) % n));
      if (ok) out.push_back({dx, dy});
    }
  return out;
}

/// Invariant factors (d1, d2), d1 | d2, of a finite subgroup of Z_n^2 given
/// as translations: d2 is the exponent, d1 = order / d2.
inline std::array<int, 2> translation_group_factors(const std::vector<std::array<int, 2>>& g,
                                                   int n) {
  int exponent = 1;
  for (auto [dx, dy] : g) {
    int k = 1;
    while ((k * dx) % n != 0 || (k * dy) % n != 0) ++k;
    exponent = std::max(exponent, k);
  }
  return {static_cast<int>(g.size()) / exponent, exponent};
}

/// Invariant factors (d1, d2) of Z^2 / A Z^2 for a 2x2 integer matrix with
/// det != 0, by enumerating the finite group Z_D^2 / (A Z^2 mod D).
inline std::array<long, 2> cokernel_by_enumeration(const std::array<long, 4>& a) {
  const long det = a[0] * a[3] - a[1] * a[2];
  const long d = det < 0 ? -det : det;
  auto idx = [d](long x, long y) { return ((x % d + d) % d) * d + ((y % d + d) % d); };
  std::vector<char> in_lattice(static_cast<std::size_t>(d * d), 0);
  // Column span mod D; D * Z^2 lies inside A Z^2.
  std::vector<std::array<long, 2>> stack{{0, 0}};
  in_lattice[idx(0, 0)] = 1;
  const std::array<std::array<long, 2>, 2> cols{{{a[0], a[2]}, {a[1], a[3]}}};
  while (!stack.empty()) {
    auto p = stack.back();
    stack.pop_back();
    for (const auto& c : cols) {
      long x = p[0] + c[0], y = p[1] + c[1];
      if (!in_lattice[idx(x, y)]) {
        in_lattice[idx(x, y)] = 1;
        stack.push_back({((x % d) + d) % d, ((y % d) + d) % d});
      }
    }
  }
  long exponent = 1;
  for (long x = 0; x < d; ++x)
    for (long y = 0; y < d; ++y) {
      long k = 1;
      while (!in_lattice[idx(k * x, k * y)]) ++k;
      exponent = std::max(exponent, k);
    }
  return {d / exponent, exponent};
}

}  // namespace oracle
