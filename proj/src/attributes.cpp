#include "bimsem/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bimsem/errors.hpp"

namespace bimsem {

double AttributeMap::at(const std::string& name) const {
    auto it = scalars.find(name);
    if (it == scalars.end())
        throw DataError("attribute-missing: '" + name + "'");
    return it->second;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_extent(double e, const char* axis, const std::string& cls) {
    if (e <= 0.0)
        throw GeometryError("degenerate-geometry: " + cls + " has zero extent on " + axis);
}

// Dominant horizontal direction of the xy-projected vertices (principal
// axis of the 2x2 covariance). Returns the unit direction.
std::pair<double, double> dominant_horizontal_direction(const Mesh& mesh) {
    double mx = 0, my = 0;
    for (const auto& v : mesh.vertices) {
        mx += v.x;
        my += v.y;
    }
    const double n = static_cast<double>(mesh.vertices.size());
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& v : mesh.vertices) {
        const double dx = v.x - mx, dy = v.y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // principal eigenvector of [[sxx,sxy],[sxy,syy]]
    const double tr = sxx + syy;
    const double det = sxx * syy - sxy * sxy;
    const double lambda = 0.5 * tr + std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    double ex, ey;
    if (std::abs(sxy) > 1e-12) {
        ex = lambda - syy;
        ey = sxy;
    } else {
        ex = sxx >= syy ? 1.0 : 0.0;
        ey = sxx >= syy ? 0.0 : 1.0;
    }
    const double len = std::hypot(ex, ey);
    return {ex / len, ey / len};
}

} // namespace

double dominant_slope_deg(const Mesh& mesh) {
    struct Group {
        Vec3 normal;
        double area = 0.0;
    };
    std::vector<Group> groups;
    for (const auto& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3 c = cross(mesh.vertices[t[1]] - a, mesh.vertices[t[2]] - a);
        const double area = 0.5 * norm(c);
        if (area < 1e-15) continue;
        Vec3 n = c / (2.0 * area);
        // fold to a canonical hemisphere so opposite faces group together
        if (n.z < 0 || (n.z == 0 && (n.x < 0 || (n.x == 0 && n.y < 0)))) n = n * -1.0;
        bool found = false;
        for (auto& g : groups) {
            if (norm(g.normal - n) < 1e-6) {
                g.area += area;
                found = true;
                break;
            }
        }
        if (!found) groups.push_back({n, area});
    }
    if (groups.empty()) return 0.0;

    const Group* dominant = &groups[0];
    for (const auto& g : groups) {
        if (g.area > dominant->area + 1e-12) dominant = &g;
    }
    const double cos_angle = std::clamp(std::abs(dominant->normal.z), 0.0, 1.0);
    return std::acos(cos_angle) * 180.0 / kPi;
}

AttributeMap compute_attributes(const Mesh& mesh, const std::string& cls) {
    validate_mesh(mesh);
    const Aabb box = aabb(mesh);
    const Vec3 ext = box.extent();
    const double vol = volume(mesh);

    AttributeMap attrs;
    attrs.central_point = box.center();

    if (cls == "wall") {
        require_extent(ext.z, "z", cls);
        auto [dx, dy] = dominant_horizontal_direction(mesh);
        const double axis_cos = std::max(std::abs(dx), std::abs(dy));
        double length, thickness;
        char axis;
        if (axis_cos >= std::cos(5.0 * kPi / 180.0)) {
            length = std::max(ext.x, ext.y);
            thickness = std::min(ext.x, ext.y);
            axis = ext.x >= ext.y ? 'x' : 'y';
        } else {
            // non-axis-aligned: measure along the dominant direction
            double lo = 1e300, hi = -1e300, plo = 1e300, phi = -1e300;
            for (const auto& v : mesh.vertices) {
                const double along = v.x * dx + v.y * dy;
                const double across = -v.x * dy + v.y * dx;
                lo = std::min(lo, along);
                hi = std::max(hi, along);
                plo = std::min(plo, across);
                phi = std::max(phi, across);
            }
            length = hi - lo;
            thickness = phi - plo;
            axis = std::abs(dx) >= std::abs(dy) ? 'x' : 'y';
            attrs.oriented_fallback = true;
        }
        require_extent(length, "horizontal", cls);
        require_extent(thickness, "horizontal", cls);
        attrs.axis = axis;
        attrs.scalars["height"] = ext.z;
        attrs.scalars["length"] = length;
        attrs.scalars["thickness"] = thickness;
        attrs.scalars["area"] = length * ext.z;
        attrs.scalars["volume"] = vol;
        return attrs;
    }

    if (cls == "floor") {
        require_extent(ext.z, "z", cls);
        require_extent(ext.x, "x", cls);
        require_extent(ext.y, "y", cls);
        attrs.axis = ext.x >= ext.y ? 'x' : 'y';
        attrs.scalars["thickness"] = ext.z;
        attrs.scalars["volume"] = vol;
        attrs.scalars["area"] = vol / ext.z;
        // AABB approximation; approximate for non-rectangular footprints
        attrs.scalars["perimeter"] = 2.0 * (ext.x + ext.y);
        attrs.scalars["slope"] = dominant_slope_deg(mesh);
        return attrs;
    }

    if (cls == "window" || cls == "door") {
        require_extent(ext.z, "z", cls);
        require_extent(ext.x, "x", cls);
        require_extent(ext.y, "y", cls);
        attrs.axis = ext.x >= ext.y ? 'x' : 'y';
        attrs.scalars["width"] = std::max(ext.x, ext.y);
        attrs.scalars["depth"] = std::min(ext.x, ext.y);
        attrs.scalars["height"] = ext.z;
        return attrs;
    }

    throw DataError("unknown object class '" + cls + "'");
}

} // namespace bimsem
