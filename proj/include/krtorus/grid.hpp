#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krtorus/surface.hpp"

namespace krtorus {

/// Closed-form fields sampled by the `gen` subcommand.
enum class Preset {
  kTwoCell,       // cos 2pi x + cos 2pi y
  kZ2Sym,         // cos 4pi x + cos 2pi y
  kZ2xZ2Sym,      // cos 4pi x + cos 4pi y
  kCyclicHeight,  // cos 2pi y + 0.3 cos 2pi x
};

std::optional<Preset> preset_from_name(std::string_view name);
std::string_view preset_name(Preset preset);
std::vector<Preset> all_presets();

/// cos(2 pi k / n) with exact symmetries: cos(pi - t) == -cos(t) and
/// cos(pi / 2) == 0 hold bit-for-bit, so sums of samples cancel exactly.
double grid_cos(long k, int n);

/// Vertex (i, j) of the n x n unit-square torus has index i + n * j.
/// Each square is split along its (0,0)-(1,1) diagonal.
std::vector<Triangle> grid_torus_triangles(int n);

using GridSampler = std::function<double(int i, int j)>;

/// `torus-field v1` text for a sampled grid field; values use the shortest
/// round-trip decimal form of each double.
std::string grid_field_text(int n, const GridSampler& sample);

/// Requires n >= 8 and n divisible by 4.
std::string generate_preset(Preset preset, int n);

struct RandomFieldInfo {
  Preset base = Preset::kTwoCell;
  /// Noise is periodic under the symmetry group of the base field.
  bool symmetric_noise = false;
};

/// Tree-shaped random field: a tree preset multiplied by 1 + noise/2 away
/// from its zero level, which keeps the special level set intact while
/// adding random critical points inside the disks.
std::string random_tree_field(int n, std::uint32_t seed, RandomFieldInfo* info = nullptr);

}  // namespace krtorus
