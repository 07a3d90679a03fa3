#include "doctest.h"

#include "fixtures.hpp"
#include "krtorus/error.hpp"
#include "krtorus/homology.hpp"
#include "oracles.hpp"

using namespace krtorus;

namespace {

bool unimodular(const IntMatrix& m) {
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

void check_snf(const IntMatrix& a) {
  SnfResult r = smith_normal_form(a);
  CHECK(r.U * a * r.V == r.D);
  CHECK(r.U * r.U_inv == IntMatrix::identity(a.rows()));
  CHECK(r.V * r.V_inv == IntMatrix::identity(a.cols()));
  CHECK(unimodular(r.U));
  CHECK(unimodular(r.V));
  for (int i = 0; i < r.D.rows(); ++i)
    for (int j = 0; j < r.D.cols(); ++j)
      if (i != j) CHECK(r.D(i, j) == 0);
  for (int i = 0; i < r.rank; ++i) {
    CHECK(r.D(i, i) > 0);
    if (i + 1 < r.rank) CHECK(r.D(i + 1, i + 1) % r.D(i, i) == 0);
  }
  for (int i = r.rank; i < std::min(a.rows(), a.cols()); ++i) CHECK(r.D(i, i) == 0);
}

}  // namespace

TEST_CASE("matrix parsing and printing") {
  IntMatrix m = IntMatrix::parse("2, 2; 0,4");
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m.to_string() == "[[2,2],[0,4]]");
  CHECK(IntMatrix::parse("-3").to_string() == "[[-3]]");
  CHECK_THROWS_AS(IntMatrix::parse("1,2;3"), Error);
  CHECK_THROWS_AS(IntMatrix::parse("1/2,0;0,1"), Error);
  CHECK_THROWS_AS(IntMatrix::parse("1,,2"), Error);
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix::identity(4)) == 1);
  CHECK(determinant(IntMatrix::parse("0,1;1,0")) == -1);
  CHECK(determinant(IntMatrix::parse("2,3,1;4,1,0;0,5,7")) == -50);
  CHECK(determinant(IntMatrix::parse("0,0,1;0,2,0;3,0,0")) == -6);
  CHECK(determinant(IntMatrix::parse("1,2;2,4")) == 0);
}

TEST_CASE("smith normal form of small examples") {
  CHECK(smith_normal_form(IntMatrix::identity(3)).diagonal() == std::vector<Integer>{1, 1, 1});
  CHECK(smith_normal_form(IntMatrix::parse("2,0;0,6")).diagonal() == std::vector<Integer>{2, 6});
  CHECK(smith_normal_form(IntMatrix::parse("6,0;0,4")).diagonal() == std::vector<Integer>{2, 12});
  CHECK(smith_normal_form(IntMatrix::parse("2,2;0,4")).diagonal() == std::vector<Integer>{2, 4});
  CHECK(smith_normal_form(IntMatrix::parse("2,0;1,2")).diagonal() == std::vector<Integer>{1, 4});
  CHECK(smith_normal_form(IntMatrix::parse("0,0;0,0")).rank == 0);

  auto inv = cokernel_invariants(IntMatrix::parse("2,0;1,2"));
  CHECK(inv.factors == std::vector<Integer>{4});
  CHECK(inv.free_rank == 0);
  CHECK(lattice_quotient_pair(IntMatrix::parse("2,0;1,2")) == std::array<Integer, 2>{1, 4});
  CHECK(lattice_quotient_pair(IntMatrix::parse("2,2;0,4")) == std::array<Integer, 2>{2, 4});
  CHECK_THROWS_AS(lattice_quotient_pair(IntMatrix::parse("1,2;2,4")), Error);
  CHECK_THROWS_AS(lattice_quotient_pair(IntMatrix::parse("1,2,3;2,4,5")), Error);

  auto free_part = cokernel_invariants(IntMatrix::parse("2;0;0"));
  CHECK(free_part.factors == std::vector<Integer>{2});
  CHECK(free_part.free_rank == 2);

  for (const char* text : {"2,4,4;-6,6,12;10,-4,-16", "0,3;5,0;7,1", "1,2,3,4;2,4,6,8",
                           "12,18;8,12", "0,0,0;0,0,5"})
    check_snf(IntMatrix::parse(text));
}

TEST_CASE("smith normal form agrees with enumeration on every 2x2 matrix in [-4,4]") {
  int checked = 0;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c)
        for (long d = -4; d <= 4; ++d) {
          if (a * d - b * c == 0) continue;
          IntMatrix m = IntMatrix::from_rows({{a, b}, {c, d}});
          SnfResult r = smith_normal_form(m);
          auto expected = oracle::cokernel_by_enumeration({a, b, c, d});
          REQUIRE(r.rank == 2);
          CHECK(r.D(0, 0) == expected[0]);
          CHECK(r.D(1, 1) == expected[1]);
          CHECK(r.U * m * r.V == r.D);
          CHECK(unimodular(r.U));
          CHECK(unimodular(r.V));
          ++checked;
        }
  CHECK(checked > 5000);
}

TEST_CASE("simplicial homology of a torus grid and a sphere") {
  for (int n : {8, 12}) {
    SurfaceField s = fixtures::preset(Preset::kTwoCell, n);
    ChainComplex c = simplicial_chain_complex(s);
    Homology h = cellular_homology(c);
    CHECK(h.betti == std::array<int, 3>{1, 2, 1});
    for (const auto& t : h.torsion) CHECK(t.empty());
    REQUIRE(h.h1_basis.size() == 2);
    for (const auto& z : h.h1_basis) {
      std::vector<Integer> boundary(c.n0, 0);
      for (int e = 0; e < c.n1; ++e)
        for (int v = 0; v < c.n0; ++v) boundary[v] += c.d1(v, e) * z[e];
      for (const auto& x : boundary) CHECK(x == 0);
    }
    CHECK(h.h1_coordinates(h.h1_basis[0]) == std::vector<Integer>{1, 0});
    CHECK(h.h1_coordinates(h.h1_basis[1]) == std::vector<Integer>{0, 1});
    CHECK(h1_action(c, h, CellAutomorphism::identity(c.n0, c.n1, c.n2)) ==
          IntMatrix::identity(2));
  }
  ChainComplex sphere = simplicial_chain_complex(fixtures::tetrahedron());
  CHECK(cellular_homology(sphere).betti == std::array<int, 3>{1, 0, 1});
}

TEST_CASE("homology of a one-vertex Klein bottle has Z2 torsion") {
  ChainComplex c;
  c.n0 = 1;
  c.n1 = 2;
  c.n2 = 1;
  c.d1 = IntMatrix(1, 2);
  c.d2 = IntMatrix::parse("0;2");
  Homology h = cellular_homology(c);
  CHECK(h.betti == std::array<int, 3>{1, 1, 0});
  CHECK(h.torsion[1] == std::vector<Integer>{2});
}

TEST_CASE("h1 action of automorphisms of the one-vertex torus") {
  ChainComplex c;
  c.n0 = 1;
  c.n1 = 2;
  c.n2 = 1;
  c.d1 = IntMatrix(1, 2);
  c.d2 = IntMatrix(2, 1);
  Homology h = cellular_homology(c);
  CHECK(h.betti == std::array<int, 3>{1, 2, 1});

  CellAutomorphism swap = CellAutomorphism::identity(1, 2, 1);
  swap.one = {1, 0};
  swap.two_sign = {-1};
  CHECK(swap.is_chain_map(c));
  IntMatrix m = h1_action(c, h, swap);
  CHECK(determinant(m) == -1);
  CHECK(h1_action(c, h, swap.compose(swap)) == IntMatrix::identity(2));
  CHECK(swap.compose(swap).is_identity());
  CHECK(swap.inverse() == swap);

  CellAutomorphism flip = CellAutomorphism::identity(1, 2, 1);
  flip.one_sign = {-1, 1};
  IntMatrix f = h1_action(c, h, flip);
  CHECK(determinant(f) == -1);
  CHECK(f * f == IntMatrix::identity(2));
  CHECK(!CellAutomorphism::identity(1, 2, 1).compose(flip).is_identity());
}

TEST_CASE("chain-map test rejects a wrong orientation sign") {
  ChainComplex c = simplicial_chain_complex(fixtures::tetrahedron());
  CellAutomorphism id = CellAutomorphism::identity(c.n0, c.n1, c.n2);
  CHECK(id.is_chain_map(c));
  CellAutomorphism bad = id;
  bad.two_sign[0] = -1;
  CHECK(!bad.is_chain_map(c));
  bad = id;
  bad.one_sign[2] = -1;
  CHECK(!bad.is_chain_map(c));
}

TEST_CASE("chain condition violation is reported") {
  ChainComplex c;
  c.n0 = 2;
  c.n1 = 1;
  c.n2 = 1;
  c.d1 = IntMatrix::parse("-1;1");
  c.d2 = IntMatrix::parse("1");
  CHECK_THROWS_AS(cellular_homology(c), Error);
}
