#include "bimsem/geometry.hpp"

#include <limits>
#include <map>
#include <utility>

#include "bimsem/errors.hpp"

namespace bimsem {

void validate_mesh(const Mesh& mesh) {
    if (mesh.vertices.size() < 3)
        throw DataError("empty-mesh: mesh has fewer than 3 vertices");
    if (mesh.triangles.empty())
        throw DataError("empty-mesh: mesh has no triangles");
    const int n = static_cast<int>(mesh.vertices.size());
    for (const auto& t : mesh.triangles)
        for (int idx : t)
            if (idx < 0 || idx >= n)
                throw DataError("index: triangle references vertex " + std::to_string(idx) +
                                " but mesh has " + std::to_string(n) + " vertices");
    for (const auto& v : mesh.vertices)
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            throw DataError("non-finite vertex coordinate");
}

Aabb aabb(const Mesh& mesh) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Aabb box{{inf, inf, inf}, {-inf, -inf, -inf}};
    for (const auto& v : mesh.vertices) box.expand(v);
    return box;
}

double surface_area(const Mesh& mesh) {
    double area = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        area += 0.5 * norm(cross(b - a, c - a));
    }
    return area;
}

double volume(const Mesh& mesh) {
    double six_vol = 0.0;
    for (const auto& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        six_vol += dot(a, cross(b, c));
    }
    return std::abs(six_vol) / 6.0;
}

bool volume_is_reliable(const Mesh& mesh) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    for (const auto& [edge, count] : edge_count)
        if (count % 2 != 0) return false;
    return true;
}

Vec3 centroid(const Mesh& mesh) {
    Vec3 sum;
    for (const auto& v : mesh.vertices) sum += v;
    return sum / static_cast<double>(mesh.vertices.size());
}

Mesh translated(const Mesh& mesh, const Vec3& offset) {
    Mesh out = mesh;
    for (auto& v : out.vertices) v += offset;
    return out;
}

Mesh rotated(const Mesh& mesh, int axis, double angle_rad, const Vec3& pivot) {
    const double c = std::cos(angle_rad), s = std::sin(angle_rad);
    const int u = (axis + 1) % 3, w = (axis + 2) % 3;
    Mesh out = mesh;
    for (auto& v : out.vertices) {
        const double pu = v[u] - pivot[u];
        const double pw = v[w] - pivot[w];
        v[u] = pivot[u] + c * pu - s * pw;
        v[w] = pivot[w] + s * pu + c * pw;
    }
    return out;
}

} // namespace bimsem
