#include "krtorus/surface.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "krtorus/error.hpp"
#include "krtorus/union_find.hpp"

namespace krtorus {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Integer pow10(long e) {
  Integer p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

}  // namespace

Rational parse_scalar(std::string_view text) {
  auto bad = [&]() -> Rational {
    fail(ErrorCode::kParse, "malformed scalar '" + std::string(text) + "'");
  };
  if (text.empty()) return bad();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num[0] == '-' || num[0] == '+')) {
      neg = num[0] == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return bad();
    // cpp_int reads a leading zero as an octal prefix.
    num.remove_prefix(std::min(num.find_first_not_of('0'), num.size() - 1));
    den.remove_prefix(std::min(den.find_first_not_of('0'), den.size() - 1));
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0) return bad();
    Rational r(n, d);
    return neg ? Rational(-r) : r;
  }

  std::string_view s = text;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_neg = false;
    if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
      exp_neg = exp_text[0] == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return bad();
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (exp_neg) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) return bad();
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      return bad();
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) return bad();
    digits = std::string(s);
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  Integer mantissa = digits.empty() ? Integer(0) : Integer(digits);
  Rational r = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                             : Rational(mantissa, pow10(-exponent));
  return neg ? Rational(-r) : r;
}

std::string format_scalar(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

SurfaceField::SurfaceField(std::vector<Rational> values, std::vector<Triangle> triangles,
                           std::optional<std::vector<Point3>> coords)
    : values_(std::move(values)),
      triangles_(std::move(triangles)),
      coords_(std::move(coords)) {
  const int n = vertex_count();
  if (coords_ && static_cast<int>(coords_->size()) != n)
    fail(ErrorCode::kParse, "coordinate count does not match vertex count");

  std::set<std::array<int, 3>> seen;
  std::set<std::array<int, 2>> edge_set;
  incident_.assign(n, {});
  for (int t = 0; t < triangle_count(); ++t) {
    const Triangle& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= n)
        fail(ErrorCode::kIndexRange, "triangle " + std::to_string(t) + " references vertex " +
                                         std::to_string(v) + " outside [0," +
                                         std::to_string(n) + ")");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      fail(ErrorCode::kDegenerateTriangle,
           "triangle " + std::to_string(t) + " repeats a vertex");
    std::array<int, 3> key = tri;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      fail(ErrorCode::kDuplicateTriangle, "triangle " + std::to_string(t) + " is a duplicate");
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      edge_set.insert({std::min(a, b), std::max(a, b)});
      incident_[tri[k]].push_back(t);
    }
  }
  edges_.assign(edge_set.begin(), edge_set.end());

  order_.resize(n);
  for (int v = 0; v < n; ++v) order_[v] = v;
  std::sort(order_.begin(), order_.end(), [this](int a, int b) {
    if (values_[a] != values_[b]) return values_[a] < values_[b];
    return a < b;
  });
  rank_.resize(n);
  for (int i = 0; i < n; ++i) rank_[order_[i]] = i;
}

int SurfaceField::edge_index(int a, int b) const {
  std::array<int, 2> key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

namespace {

/// Next non-empty, non-comment line with surrounding blanks trimmed.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    return true;
  }
  return false;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long parse_count(const std::string& tok, int line_no) {
  if (!all_digits(tok) || tok.size() > 9)
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected a count, got '" +
                                tok + "'");
  return std::stol(tok);
}

}  // namespace

SurfaceField load_surface(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_line(in, line, line_no) || line != "torus-field v1")
    fail(ErrorCode::kParse, "missing 'torus-field v1' header");
  if (!next_line(in, line, line_no)) fail(ErrorCode::kParse, "missing '<V> <T>' line");
  auto counts = split_ws(line);
  if (counts.size() != 2) fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                                      ": expected '<V> <T>'");
  const long nv = parse_count(counts[0], line_no);
  const long nt = parse_count(counts[1], line_no);

  std::vector<Rational> values;
  std::vector<Point3> coords;
  bool any_coords = false;
  values.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next_line(in, line, line_no))
      fail(ErrorCode::kParse, "expected " + std::to_string(nv) + " vertex lines");
    auto tok = split_ws(line);
    if (tok.size() != 1 && tok.size() != 4)
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected 'f [x y z]'");
    values.push_back(parse_scalar(tok[0]));
    Point3 p{0.0, 0.0, 0.0};
    if (tok.size() == 4) {
      any_coords = true;
      for (int k = 0; k < 3; ++k) p[k] = to_double(parse_scalar(tok[k + 1]));
    }
    coords.push_back(p);
  }

  std::vector<Triangle> triangles;
  triangles.reserve(nt);
  for (long t = 0; t < nt; ++t) {
    if (!next_line(in, line, line_no))
      fail(ErrorCode::kParse, "expected " + std::to_string(nt) + " triangle lines");
    auto tok = split_ws(line);
    if (tok.size() != 3)
      fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected 'i j k'");
    Triangle tri{};
    for (int k = 0; k < 3; ++k) {
      const std::string& s = tok[k];
      if (s.empty() || !(all_digits(s) || (s[0] == '-' && all_digits(s.substr(1)))) ||
          s.size() > 10)
        fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad index '" + s + "'");
      tri[k] = static_cast<int>(std::stol(s));
    }
    triangles.push_back(tri);
  }
  if (next_line(in, line, line_no))
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": trailing content");

  std::optional<std::vector<Point3>> opt_coords;
  if (any_coords) opt_coords = std::move(coords);
  return SurfaceField(std::move(values), std::move(triangles), std::move(opt_coords));
}

SurfaceField load_surface_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_surface(in);
}

std::string write_surface(const SurfaceField& surface) {
  std::ostringstream out;
  out << "torus-field v1\n";
  out << surface.vertex_count() << ' ' << surface.triangle_count() << '\n';
  for (int v = 0; v < surface.vertex_count(); ++v) {
    out << format_scalar(surface.value(v));
    if (surface.coords()) {
      char buf[32];
      for (double c : (*surface.coords())[v]) {
        auto res = std::to_chars(buf, buf + sizeof buf, c);
        out << ' ' << std::string_view(buf, res.ptr - buf);
      }
    }
    out << '\n';
  }
  for (const Triangle& t : surface.triangles())
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

SurfaceTopology validate_closed_orientable(const SurfaceField& surface) {
  const int n = surface.vertex_count();
  if (n == 0 || surface.triangle_count() == 0)
    fail(ErrorCode::kDisconnected, "surface has no triangles");

  std::map<std::pair<int, int>, int> directed;
  for (const Triangle& t : surface.triangles())
    for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];

  for (const auto& [e, count] : directed) {
    if (count > 1)
      fail(ErrorCode::kNonOrientable, "edge " + std::to_string(e.first) + "->" +
                                          std::to_string(e.second) +
                                          " is used twice in the same direction");
    if (!directed.count({e.second, e.first}))
      fail(ErrorCode::kBoundaryEdge, "edge " + std::to_string(e.first) + "-" +
                                         std::to_string(e.second) +
                                         " belongs to only one triangle");
  }

  UnionFind uf(n);
  for (const auto& e : surface.edges()) uf.join(e[0], e[1]);
  for (int v = 0; v < n; ++v) {
    if (surface.incident_triangles(v).empty())
      fail(ErrorCode::kDisconnected, "vertex " + std::to_string(v) + " is isolated");
    if (!uf.joined(0, v)) fail(ErrorCode::kDisconnected, "1-skeleton is not connected");
    vertex_link(surface, v);
  }

  SurfaceTopology topo;
  topo.chi = surface.euler_characteristic();
  if ((2 - topo.chi) % 2 != 0 || topo.chi > 2)
    fail(ErrorCode::kNonManifold, "Euler characteristic " + std::to_string(topo.chi) +
                                      " is impossible for a closed orientable surface");
  topo.genus = (2 - topo.chi) / 2;
  return topo;
}

std::vector<int> vertex_link(const SurfaceField& surface, int v) {
  std::map<int, int> succ;
  for (int t : surface.incident_triangles(v)) {
    const Triangle& tri = surface.triangles()[t];
    int k = tri[0] == v ? 0 : tri[1] == v ? 1 : 2;
    int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
    if (!succ.emplace(a, b).second)
      fail(ErrorCode::kNonManifold, "vertex " + std::to_string(v) + " has a non-manifold link");
  }
  std::vector<int> link;
  if (succ.empty()) return link;
  int start = succ.begin()->first;
  int cur = start;
  do {
    link.push_back(cur);
    auto it = succ.find(cur);
    if (it == succ.end())
      fail(ErrorCode::kBoundaryEdge, "vertex " + std::to_string(v) + " lies on a boundary");
    cur = it->second;
  } while (cur != start && link.size() <= succ.size());
  if (cur != start || link.size() != succ.size())
    fail(ErrorCode::kNonManifold, "link of vertex " + std::to_string(v) +
                                      " is not a single cycle");
  return link;
}

std::string_view vertex_kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::kMinimum: return "minimum";
    case VertexKind::kRegular: return "regular";
    case VertexKind::kSaddle: return "saddle";
    case VertexKind::kMaximum: return "maximum";
  }
  return "?";
}

int VertexClass::index() const {
  switch (kind) {
    case VertexKind::kMinimum:
    case VertexKind::kMaximum: return 1;
    case VertexKind::kSaddle: return -multiplicity;
    case VertexKind::kRegular: return 0;
  }
  return 0;
}

VertexClass classify_vertex(const SurfaceField& surface, int v) {
  const std::vector<int> link = vertex_link(surface, v);
  int lower = 0, upper = 0, changes = 0;
  const std::size_t n = link.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool lo = surface.below(link[i], v);
    (lo ? lower : upper)++;
    if (lo != surface.below(link[(i + 1) % n], v)) ++changes;
  }
  VertexClass c;
  if (lower == 0) {
    c.kind = VertexKind::kMinimum;
  } else if (upper == 0) {
    c.kind = VertexKind::kMaximum;
  } else {
    const int runs = changes / 2;  // lower runs == upper runs on a cycle
    if (runs == 1) {
      c.kind = VertexKind::kRegular;
    } else {
      c.kind = VertexKind::kSaddle;
      c.multiplicity = runs - 1;
    }
  }
  return c;
}

std::vector<VertexClass> classify_all(const SurfaceField& surface) {
  std::vector<VertexClass> out(surface.vertex_count());
  for (int v = 0; v < surface.vertex_count(); ++v) out[v] = classify_vertex(surface, v);
  return out;
}

int total_index(const SurfaceField& surface) {
  int sum = 0;
  for (int v = 0; v < surface.vertex_count(); ++v) sum += classify_vertex(surface, v).index();
  return sum;
}

}  // namespace krtorus
