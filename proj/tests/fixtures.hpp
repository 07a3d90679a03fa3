#pragma once

#include <string>
#include <vector>

#include "krtorus/grid.hpp"
#include "krtorus/surface.hpp"

namespace fixtures {

inline krtorus::SurfaceField tetrahedron(std::vector<krtorus::Rational> values = {0, 1, 2, 3}) {
  return krtorus::SurfaceField(std::move(values), {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}});
}

inline krtorus::SurfaceField preset(krtorus::Preset p, int n = 16) {
  return krtorus::load_surface_text(krtorus::generate_preset(p, n));
}

inline krtorus::SurfaceField grid(int n, const krtorus::GridSampler& f) {
  return krtorus::load_surface_text(krtorus::grid_field_text(n, f));
}

}  // namespace fixtures
