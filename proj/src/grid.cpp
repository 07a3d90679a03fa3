#include "krtorus/grid.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "krtorus/error.hpp"

namespace krtorus {

std::optional<Preset> preset_from_name(std::string_view name) {
  for (Preset p : all_presets())
    if (preset_name(p) == name) return p;
  return std::nullopt;
}

std::string_view preset_name(Preset preset) {
  switch (preset) {
    case Preset::kTwoCell: return "two-cell";
    case Preset::kZ2Sym: return "z2-sym";
    case Preset::kZ2xZ2Sym: return "z2xz2-sym";
    case Preset::kCyclicHeight: return "cyclic-height";
  }
  return "?";
}

std::vector<Preset> all_presets() {
  return {Preset::kTwoCell, Preset::kZ2Sym, Preset::kZ2xZ2Sym, Preset::kCyclicHeight};
}

double grid_cos(long k, int n) {
  long r = ((k % n) + n) % n;
  if (2 * r > n) r = n - r;  // now 0 <= r <= n/2
  if (4 * r == n) return 0.0;
  if (4 * r > n) return -std::cos(2.0 * std::numbers::pi * static_cast<double>(n / 2.0 - r) / n);
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

std::vector<Triangle> grid_torus_triangles(int n) {
  std::vector<Triangle> tris;
  tris.reserve(2 * n * n);
  auto idx = [n](int i, int j) { return ((i % n) + n) % n + n * (((j % n) + n) % n); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      int v00 = idx(i, j), v10 = idx(i + 1, j), v11 = idx(i + 1, j + 1), v01 = idx(i, j + 1);
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
    }
  }
  return tris;
}

namespace {

std::string shortest(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string grid_field_text(int n, const GridSampler& sample) {
  std::ostringstream out;
  out << "torus-field v1\n";
  out << "# " << n << "x" << n << " grid torus, vertex i + " << n << "*j at (i/" << n << ", j/"
      << n << ")\n";
  out << n * n << ' ' << 2 * n * n << '\n';
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      out << shortest(sample(i, j)) << ' ' << shortest(static_cast<double>(i) / n) << ' '
          << shortest(static_cast<double>(j) / n) << " 0\n";
  for (const Triangle& t : grid_torus_triangles(n))
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

namespace {

GridSampler preset_sampler(Preset preset, int n) {
  switch (preset) {
    case Preset::kTwoCell:
      return [n](int i, int j) { return grid_cos(i, n) + grid_cos(j, n); };
    case Preset::kZ2Sym:
      return [n](int i, int j) { return grid_cos(2L * i, n) + grid_cos(j, n); };
    case Preset::kZ2xZ2Sym:
      return [n](int i, int j) { return grid_cos(2L * i, n) + grid_cos(2L * j, n); };
    case Preset::kCyclicHeight:
      return [n](int i, int j) { return grid_cos(j, n) + 0.3 * grid_cos(i, n); };
  }
  return {};
}

void check_grid_size(int n) {
  if (n < 8 || n % 4 != 0)
    fail(ErrorCode::kRange, "grid size must be a multiple of 4 and at least 8, got " +
                                std::to_string(n));
}

}  // namespace

std::string generate_preset(Preset preset, int n) {
  check_grid_size(n);
  return grid_field_text(n, preset_sampler(preset, n));
}

std::string random_tree_field(int n, std::uint32_t seed, RandomFieldInfo* info) {
  check_grid_size(n);
  std::mt19937 rng(seed);
  RandomFieldInfo chosen;
  chosen.base = static_cast<Preset>(std::uniform_int_distribution<int>(0, 2)(rng));
  chosen.symmetric_noise = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  if (info) *info = chosen;

  // Noise period per axis: half the grid where the base field is symmetric.
  int period_x = n, period_y = n;
  if (chosen.symmetric_noise) {
    if (chosen.base == Preset::kZ2Sym || chosen.base == Preset::kZ2xZ2Sym) period_x = n / 2;
    if (chosen.base == Preset::kZ2xZ2Sym) period_y = n / 2;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> noise(static_cast<std::size_t>(period_x) * period_y);
  for (double& x : noise) x = unit(rng);

  GridSampler base = preset_sampler(chosen.base, n);
  return grid_field_text(n, [&](int i, int j) {
    double b = base(i, j);
    if (std::abs(b) <= 0.3) return b;
    return b * (1.0 + 0.5 * noise[(i % period_x) + period_x * (j % period_y)]);
  });
}

}  // namespace krtorus
