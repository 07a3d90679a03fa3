#include "krtorus/homology.hpp"

#include <algorithm>
#include <sstream>

#include "krtorus/error.hpp"

namespace krtorus {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) fail(ErrorCode::kParse, "ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::parse(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::string s(text);
  std::stringstream row_stream(s);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    std::vector<Integer> entries;
    std::stringstream entry_stream(row);
    std::string entry;
    while (std::getline(entry_stream, entry, ',')) {
      auto a = entry.find_first_not_of(" \t");
      auto b = entry.find_last_not_of(" \t");
      if (a == std::string::npos) fail(ErrorCode::kParse, "empty matrix entry");
      Rational q = parse_scalar(std::string_view(entry).substr(a, b - a + 1));
      if (boost::multiprecision::denominator(q) != 1)
        fail(ErrorCode::kParse, "matrix entry '" + entry + "' is not an integer");
      entries.push_back(boost::multiprecision::numerator(q));
    }
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) fail(ErrorCode::kParse, "empty matrix");
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols()) fail(ErrorCode::kParse, "ragged matrix rows");
    for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::string IntMatrix::to_string() const {
  std::string out = "[";
  for (int i = 0; i < rows_; ++i) {
    out += i ? ",[" : "[";
    for (int j = 0; j < cols_; ++j) out += (j ? "," : "") + (*this)(i, j).str();
    out += "]";
  }
  return out + "]";
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  check_internal(a.cols() == b.rows(), "matrix dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix& a) {
  check_internal(a.rows() == a.cols(), "determinant of a non-square matrix");
  const int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n && swap_row < 0; ++i)
        if (m(i, k) != 0) swap_row = i;
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (int i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

/// Elementary operations applied to D while keeping U, U^-1, V, V^-1 in step.
struct SnfWorker {
  SnfResult& r;

  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < r.D.cols(); ++j) std::swap(r.D(i, j), r.D(k, j));
    for (int j = 0; j < r.U.cols(); ++j) std::swap(r.U(i, j), r.U(k, j));
    for (int j = 0; j < r.U_inv.rows(); ++j) std::swap(r.U_inv(j, i), r.U_inv(j, k));
  }
  void swap_cols(int j, int l) {
    if (j == l) return;
    for (int i = 0; i < r.D.rows(); ++i) std::swap(r.D(i, j), r.D(i, l));
    for (int i = 0; i < r.V.rows(); ++i) std::swap(r.V(i, j), r.V(i, l));
    for (int i = 0; i < r.V_inv.cols(); ++i) std::swap(r.V_inv(j, i), r.V_inv(l, i));
  }
  // row_i += q * row_k
  void add_row(int i, int k, const Integer& q) {
    if (q == 0) return;
    for (int j = 0; j < r.D.cols(); ++j) r.D(i, j) += q * r.D(k, j);
    for (int j = 0; j < r.U.cols(); ++j) r.U(i, j) += q * r.U(k, j);
    for (int j = 0; j < r.U_inv.rows(); ++j) r.U_inv(j, k) -= q * r.U_inv(j, i);
  }
  // col_j += q * col_l
  void add_col(int j, int l, const Integer& q) {
    if (q == 0) return;
    for (int i = 0; i < r.D.rows(); ++i) r.D(i, j) += q * r.D(i, l);
    for (int i = 0; i < r.V.rows(); ++i) r.V(i, j) += q * r.V(i, l);
    for (int i = 0; i < r.V_inv.cols(); ++i) r.V_inv(l, i) -= q * r.V_inv(j, i);
  }
  void negate_row(int i) {
    for (int j = 0; j < r.D.cols(); ++j) r.D(i, j) = -r.D(i, j);
    for (int j = 0; j < r.U.cols(); ++j) r.U(i, j) = -r.U(i, j);
    for (int j = 0; j < r.U_inv.rows(); ++j) r.U_inv(j, i) = -r.U_inv(j, i);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  SnfResult r;
  r.D = a;
  r.U = r.U_inv = IntMatrix::identity(a.rows());
  r.V = r.V_inv = IntMatrix::identity(a.cols());
  SnfWorker w{r};
  IntMatrix& d = r.D;
  const int size = std::min(a.rows(), a.cols());

  for (int t = 0; t < size; ++t) {
    bool found_any = true;
    for (;;) {
      int pi = -1, pj = -1;
      Integer best;
      for (int i = t; i < d.rows(); ++i)
        for (int j = t; j < d.cols(); ++j) {
          if (d(i, j) == 0) continue;
          Integer mag = abs(d(i, j));
          if (pi < 0 || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        found_any = false;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool cleared = true;
      for (int i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        w.add_row(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) cleared = false;
      }
      for (int j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        w.add_col(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      int bad_row = -1;
      for (int i = t + 1; i < d.rows() && bad_row < 0; ++i)
        for (int j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      w.add_row(t, bad_row, 1);
    }
    if (!found_any) break;
    if (d(t, t) < 0) w.negate_row(t);
    r.rank = t + 1;
  }
  return r;
}

CokernelInvariants cokernel_invariants(const IntMatrix& a) {
  SnfResult snf = smith_normal_form(a);
  CokernelInvariants out;
  for (int i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) > 1) out.factors.push_back(snf.D(i, i));
  out.free_rank = a.rows() - snf.rank;
  return out;
}

std::array<Integer, 2> lattice_quotient_pair(const IntMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) fail(ErrorCode::kRange, "expected a 2x2 matrix");
  SnfResult snf = smith_normal_form(a);
  if (snf.rank != 2) fail(ErrorCode::kRange, "lattice map is not injective");
  return {snf.D(0, 0), snf.D(1, 1)};
}

ChainComplex simplicial_chain_complex(const SurfaceField& s) {
  ChainComplex c;
  c.n0 = s.vertex_count();
  c.n1 = s.edge_count();
  c.n2 = s.triangle_count();
  c.d1 = IntMatrix(c.n0, c.n1);
  c.d2 = IntMatrix(c.n1, c.n2);
  for (int e = 0; e < c.n1; ++e) {
    c.d1(s.edges()[e][0], e) = -1;
    c.d1(s.edges()[e][1], e) = 1;
  }
  for (int t = 0; t < c.n2; ++t) {
    const Triangle& tri = s.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      c.d2(s.edge_index(a, b), t) += a < b ? 1 : -1;
    }
  }
  return c;
}

Homology cellular_homology(const ChainComplex& c) {
  check_internal(c.d1.rows() == c.n0 && c.d1.cols() == c.n1 && c.d2.rows() == c.n1 &&
                     c.d2.cols() == c.n2,
                 "chain complex dimensions are inconsistent");
  if (c.n0 > 0 && c.n2 > 0 && !(c.d1 * c.d2).is_zero())
    fail(ErrorCode::kInternal, "chain condition d1 * d2 = 0 violated");

  Homology h;
  SnfResult s1 = smith_normal_form(c.d1);
  const int r1 = s1.rank;
  const int k = c.n1 - r1;

  h.cycle_coords = IntMatrix(k, c.n1);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < c.n1; ++j) h.cycle_coords(i, j) = s1.V_inv(r1 + i, j);
  IntMatrix boundary_coords = h.cycle_coords * c.d2;  // k x n2

  SnfResult s2 = smith_normal_form(boundary_coords);
  h.adapt = s2.U;
  h.boundary_rank = s2.rank;

  h.betti = {c.n0 - r1, k - s2.rank, c.n2 - s2.rank};
  for (int i = 0; i < r1; ++i)
    if (s1.D(i, i) > 1) h.torsion[0].push_back(s1.D(i, i));
  for (int i = 0; i < s2.rank; ++i)
    if (s2.D(i, i) > 1) h.torsion[1].push_back(s2.D(i, i));

  for (int g = 0; g < h.betti[1]; ++g) {
    std::vector<Integer> cycle(c.n1, 0);
    for (int i = 0; i < k; ++i) {
      const Integer& y = s2.U_inv(i, s2.rank + g);
      if (y == 0) continue;
      for (int j = 0; j < c.n1; ++j) cycle[j] += s1.V(j, r1 + i) * y;
    }
    h.h1_basis.push_back(std::move(cycle));
  }
  return h;
}

std::vector<Integer> Homology::h1_coordinates(const std::vector<Integer>& cycle) const {
  const int k = cycle_coords.rows();
  std::vector<Integer> y(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < cycle_coords.cols(); ++j) y[i] += cycle_coords(i, j) * cycle[j];
  std::vector<Integer> out;
  for (int g = boundary_rank; g < k; ++g) {
    Integer w = 0;
    for (int i = 0; i < k; ++i) w += adapt(g, i) * y[i];
    out.push_back(w);
  }
  return out;
}

CellAutomorphism CellAutomorphism::identity(int n0, int n1, int n2) {
  CellAutomorphism a;
  for (int i = 0; i < n0; ++i) a.zero.push_back(i);
  for (int i = 0; i < n1; ++i) a.one.push_back(i);
  a.one_sign.assign(n1, 1);
  for (int i = 0; i < n2; ++i) a.two.push_back(i);
  a.two_sign.assign(n2, 1);
  return a;
}

bool CellAutomorphism::is_identity() const {
  return *this == identity(static_cast<int>(zero.size()), static_cast<int>(one.size()),
                           static_cast<int>(two.size()));
}

CellAutomorphism CellAutomorphism::compose(const CellAutomorphism& rhs) const {
  CellAutomorphism out = rhs;
  for (std::size_t i = 0; i < zero.size(); ++i) out.zero[i] = zero[rhs.zero[i]];
  for (std::size_t i = 0; i < one.size(); ++i) {
    out.one[i] = one[rhs.one[i]];
    out.one_sign[i] = rhs.one_sign[i] * one_sign[rhs.one[i]];
  }
  for (std::size_t i = 0; i < two.size(); ++i) {
    out.two[i] = two[rhs.two[i]];
    out.two_sign[i] = rhs.two_sign[i] * two_sign[rhs.two[i]];
  }
  return out;
}

CellAutomorphism CellAutomorphism::inverse() const {
  CellAutomorphism out = *this;
  for (std::size_t i = 0; i < zero.size(); ++i) out.zero[zero[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < one.size(); ++i) {
    out.one[one[i]] = static_cast<int>(i);
    out.one_sign[one[i]] = one_sign[i];
  }
  for (std::size_t i = 0; i < two.size(); ++i) {
    out.two[two[i]] = static_cast<int>(i);
    out.two_sign[two[i]] = two_sign[i];
  }
  return out;
}

bool CellAutomorphism::is_chain_map(const ChainComplex& c) const {
  if (static_cast<int>(zero.size()) != c.n0 || static_cast<int>(one.size()) != c.n1 ||
      static_cast<int>(two.size()) != c.n2)
    return false;
  // A0 d1 = d1 A1 and A1 d2 = d2 A2, column by column.
  for (int e = 0; e < c.n1; ++e) {
    std::vector<Integer> lhs(c.n0, 0);
    for (int v = 0; v < c.n0; ++v) lhs[zero[v]] += c.d1(v, e);
    for (int v = 0; v < c.n0; ++v)
      if (lhs[v] != one_sign[e] * c.d1(v, one[e])) return false;
  }
  for (int f = 0; f < c.n2; ++f) {
    std::vector<Integer> lhs(c.n1, 0);
    for (int e = 0; e < c.n1; ++e) lhs[one[e]] += one_sign[e] * c.d2(e, f);
    for (int e = 0; e < c.n1; ++e)
      if (lhs[e] != two_sign[f] * c.d2(e, two[f])) return false;
  }
  return true;
}

IntMatrix h1_action(const ChainComplex& c, const Homology& h, const CellAutomorphism& a) {
  const int b1 = h.betti[1];
  IntMatrix m(b1, b1);
  for (int g = 0; g < b1; ++g) {
    std::vector<Integer> image(c.n1, 0);
    for (int e = 0; e < c.n1; ++e) image[a.one[e]] += a.one_sign[e] * h.h1_basis[g][e];
    std::vector<Integer> coords = h.h1_coordinates(image);
    for (int i = 0; i < b1; ++i) m(i, g) = coords[i];
  }
  return m;
}

IntMatrix h1_action(const ChainComplex& c, const CellAutomorphism& a) {
  return h1_action(c, cellular_homology(c), a);
}

}  // namespace krtorus
