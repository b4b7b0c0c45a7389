#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace bimsem {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

// Axis-aligned bounding box. Invariant: min[i] <= max[i].
struct Aabb {
    Vec3 min, max;

    Vec3 center() const { return (min + max) * 0.5; }
    Vec3 extent() const { return max - min; }

    void expand(const Vec3& p) {
        for (int i = 0; i < 3; ++i) {
            if (p[i] < min[i]) min[i] = p[i];
            if (p[i] > max[i]) max[i] = p[i];
        }
    }
};

using Triangle = std::array<int, 3>;

// Indexed triangle soup in a global coordinate frame, meters.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;

    bool empty() const { return vertices.empty() || triangles.empty(); }
};

// Throws DataError if indices are out of range, the mesh is too small, or
// any coordinate is non-finite.
void validate_mesh(const Mesh& mesh);

Aabb aabb(const Mesh& mesh);

// Sum of triangle areas (cross-product magnitude / 2). Degenerate
// triangles contribute zero.
double surface_area(const Mesh& mesh);

// |sum of signed origin-anchored tetrahedron volumes|. Exact for closed
// meshes regardless of winding; a value is still returned for open meshes
// but is unreliable (see volume_is_reliable).
double volume(const Mesh& mesh);

// True when every edge is shared by an even number of triangles, i.e. the
// divergence-theorem volume can be trusted.
bool volume_is_reliable(const Mesh& mesh);

// Unweighted mean of the vertex list.
Vec3 centroid(const Mesh& mesh);

Mesh translated(const Mesh& mesh, const Vec3& offset);

// Rotate all vertices about an axis-parallel line through `pivot`.
// axis: 0=x, 1=y, 2=z; angle in radians.
Mesh rotated(const Mesh& mesh, int axis, double angle_rad, const Vec3& pivot);

} // namespace bimsem
