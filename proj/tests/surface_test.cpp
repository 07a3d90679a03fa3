#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "krtorus/error.hpp"
#include "krtorus/surface.hpp"

using namespace krtorus;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("parse_scalar reads decimal, scientific and fraction text exactly") {
  CHECK(parse_scalar("0.25") == Rational(1, 4));
  CHECK(parse_scalar("-3") == Rational(-3));
  CHECK(parse_scalar("1.5e-3") == Rational(3, 2000));
  CHECK(parse_scalar("2E2") == Rational(200));
  CHECK(parse_scalar("0025.50") == Rational(51, 2));
  CHECK(parse_scalar("010/08") == Rational(5, 4));
  CHECK(parse_scalar("-7/8") == Rational(-7, 8));
  CHECK(parse_scalar(".5") == Rational(1, 2));
  CHECK(parse_scalar("0.1") == Rational(1, 10));
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1e", "e5"})
    CHECK(code_of([&] { parse_scalar(bad); }) == ErrorCode::kParse);
  CHECK(format_scalar(Rational(-7, 8)) == "-7/8");
  CHECK(format_scalar(Rational(4)) == "4");
}

TEST_CASE("load_surface on a tetrahedron boundary") {
  const char* text =
      "torus-field v1\n"
      "# a sphere\n"
      "4 4\n"
      "0 1 0 0\n1\n2\n3/2\n"
      "0 2 1\n0 1 3\n0 3 2\n1 2 3\n";
  SurfaceField s = load_surface_text(text);
  CHECK(s.vertex_count() == 4);
  CHECK(s.triangle_count() == 4);
  CHECK(s.euler_characteristic() == 2);
  CHECK(s.value(3) == Rational(3, 2));
  REQUIRE(s.coords());
  CHECK((*s.coords())[0][0] == 1.0);
  SurfaceTopology topo = validate_closed_orientable(s);
  CHECK(topo.chi == 2);
  CHECK(topo.genus == 0);
}

TEST_CASE("load_surface on the 8x8 grid torus") {
  SurfaceField s = fixtures::preset(Preset::kTwoCell, 8);
  CHECK(s.vertex_count() == 64);
  CHECK(s.triangle_count() == 128);
  CHECK(s.edge_count() == 192);
  SurfaceTopology topo = validate_closed_orientable(s);
  CHECK(topo.chi == 0);
  CHECK(topo.genus == 1);
}

TEST_CASE("load_surface rejects malformed input") {
  CHECK(code_of([] { load_surface_text("torus-field v2\n0 0\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { load_surface_text("torus-field v1\n3\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { load_surface_text("torus-field v1\n1 0\n0\n0 1 2\n"); }) ==
        ErrorCode::kParse);

  std::ostringstream out_of_range;
  out_of_range << "torus-field v1\n10 1\n";
  for (int i = 0; i < 10; ++i) out_of_range << i << "\n";
  out_of_range << "0 1 99\n";
  CHECK(code_of([&] { load_surface_text(out_of_range.str()); }) == ErrorCode::kIndexRange);

  CHECK(code_of([] { load_surface_text("torus-field v1\n3 1\n0\n1\n2\n0 1 1\n"); }) ==
        ErrorCode::kDegenerateTriangle);
  CHECK(code_of([] { load_surface_text("torus-field v1\n3 2\n0\n1\n2\n0 1 2\n2 0 1\n"); }) ==
        ErrorCode::kDuplicateTriangle);
}

TEST_CASE("validate_closed_orientable error paths") {
  auto tris = grid_torus_triangles(8);
  std::vector<Rational> values(64, 0);
  for (int i = 0; i < 64; ++i) values[i] = i;

  auto holed = tris;
  holed.pop_back();
  CHECK(code_of([&] { validate_closed_orientable(SurfaceField(values, holed)); }) ==
        ErrorCode::kBoundaryEdge);

  auto flipped = tris;
  std::swap(flipped[5][1], flipped[5][2]);
  CHECK(code_of([&] { validate_closed_orientable(SurfaceField(values, flipped)); }) ==
        ErrorCode::kNonOrientable);

  // Two disjoint tetrahedra.
  std::vector<Triangle> two{{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3},
                            {4, 6, 5}, {4, 5, 7}, {4, 7, 6}, {5, 6, 7}};
  std::vector<Rational> eight{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(code_of([&] { validate_closed_orientable(SurfaceField(eight, two)); }) ==
        ErrorCode::kDisconnected);
}

TEST_CASE("classify_vertex on model configurations") {
  SurfaceField tet = fixtures::tetrahedron();
  CHECK(classify_vertex(tet, 0).kind == VertexKind::kMinimum);
  CHECK(classify_vertex(tet, 1).kind == VertexKind::kRegular);
  CHECK(classify_vertex(tet, 3).kind == VertexKind::kMaximum);

  SurfaceField s = fixtures::preset(Preset::kTwoCell, 8);
  CHECK(classify_vertex(s, 0).kind == VertexKind::kMaximum);  // (0, 0)
  VertexClass saddle = classify_vertex(s, 4);                   // (1/2, 0)
  CHECK(saddle.kind == VertexKind::kSaddle);
  CHECK(saddle.multiplicity == 1);
  CHECK(classify_vertex(s, 4 + 8 * 4).kind == VertexKind::kMinimum);  // (1/2, 1/2)
}

TEST_CASE("a monkey saddle has multiplicity 2") {
  // Real part of (x + iy)^3 sampled around a hexagonal fan, closed into a
  // sphere by two apexes.
  std::vector<Rational> values{0, 1, -1, 1, -1, 1, -1, 10, -10};
  std::vector<Triangle> tris;
  for (int k = 0; k < 6; ++k) tris.push_back({0, 1 + k, 1 + (k + 1) % 6});
  SurfaceField fan(values, tris);
  VertexClass c = classify_vertex(fan, 0);
  CHECK(c.kind == VertexKind::kSaddle);
  CHECK(c.multiplicity == 2);
  CHECK(c.index() == -2);
}

TEST_CASE("total_index equals the Euler characteristic") {
  CHECK(total_index(fixtures::tetrahedron()) == 2);
  SurfaceField s = fixtures::preset(Preset::kTwoCell, 16);
  CHECK(total_index(s) == 0);
  int mins = 0, maxs = 0, saddles = 0;
  for (const VertexClass& c : classify_all(s)) {
    mins += c.kind == VertexKind::kMinimum;
    maxs += c.kind == VertexKind::kMaximum;
    saddles += c.kind == VertexKind::kSaddle;
  }
  CHECK(mins == 1);
  CHECK(maxs == 1);
  CHECK(saddles == 2);
  for (Preset p : all_presets()) CHECK(total_index(fixtures::preset(p)) == 0);
  for (std::uint32_t seed = 1; seed <= 10; ++seed)
    CHECK(total_index(load_surface_text(random_tree_field(16, seed))) == 0);
}

TEST_CASE("classification is invariant under order-preserving relabelling") {
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    SurfaceField s = load_surface_text(random_tree_field(16, seed));
    std::vector<Rational> ranks(s.vertex_count()), cubes(s.vertex_count());
    for (int v = 0; v < s.vertex_count(); ++v) {
      ranks[v] = s.rank(v);
      cubes[v] = s.value(v) * s.value(v) * s.value(v) - 5;
    }
    SurfaceField by_rank(ranks, s.triangles());
    SurfaceField by_cube(cubes, s.triangles());
    for (int v = 0; v < s.vertex_count(); ++v) {
      CHECK(classify_vertex(s, v) == classify_vertex(by_rank, v));
      CHECK(classify_vertex(s, v) == classify_vertex(by_cube, v));
    }
  }
}

TEST_CASE("write_surface round-trips values exactly") {
  SurfaceField s = fixtures::preset(Preset::kZ2Sym, 8);
  SurfaceField t = load_surface_text(write_surface(s));
  CHECK(t.values() == s.values());
  CHECK(t.triangles() == s.triangles());
}
