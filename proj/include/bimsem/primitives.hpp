#pragma once

#include <vector>

#include "bimsem/geometry.hpp"

namespace bimsem {

// Rectangular through-opening in a wall, absolute coordinates.
// `a` runs along the wall's run axis, `z` is vertical. The cut spans the
// full wall thickness. Openings may be flush with the wall base (doors)
// but must stay clear of the wall ends and top.
struct OpeningRect {
    double a0, a1;
    double z0, z1;
};

// Axis-aligned closed box, 8 vertices / 12 triangles, outward winding.
Mesh make_box(const Aabb& box);

// Axis-aligned wall box with rectangular openings cut through its
// thickness. run_axis: 0 = wall runs along x (thickness y), 1 = runs
// along y (thickness x). All faces are triangulated on a common grid so
// the result is watertight (every edge shared by exactly two triangles).
Mesh make_wall_with_openings(const Aabb& box, int run_axis,
                             const std::vector<OpeningRect>& openings);

} // namespace bimsem
