#pragma once

#include <map>
#include <optional>
#include <string>

#include "bimsem/geometry.hpp"

namespace bimsem {

// Type-dependent dimensional attributes.
//   wall:   height, length, thickness, area (length*height), volume
//   floor:  thickness, area (volume/thickness), perimeter, slope, volume
//   window/door: width, height, depth
// Every object additionally carries its AABB center (central_point) and,
// for orientation, the global axis (x or y) its larger horizontal extent
// runs along. All lengths are meters, areas m2, volumes m3, slope degrees.
struct AttributeMap {
    std::map<std::string, double> scalars;
    std::optional<Vec3> central_point;
    std::optional<char> axis; // 'x' or 'y'
    // set when the object was not axis-aligned and measurements fell back
    // to the dominant horizontal direction (PCA of projected vertices)
    bool oriented_fallback = false;

    double at(const std::string& name) const;
    bool has(const std::string& name) const { return scalars.count(name) > 0; }
};

// Compute attributes for a classified mesh. cls must be one of
// wall/floor/window/door. Throws GeometryError when a required axis has
// zero extent, naming the axis.
AttributeMap compute_attributes(const Mesh& mesh, const std::string& cls);

// Angle in degrees between the area-dominant face-normal group and the
// vertical axis, in [0, 90].
double dominant_slope_deg(const Mesh& mesh);

} // namespace bimsem
