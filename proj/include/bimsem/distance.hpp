#pragma once

#include "bimsem/geometry.hpp"

namespace bimsem {

// Closest point on triangle (a,b,c) to p.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2);

// Exact minimum distance between two triangles; 0 when they touch or
// intersect. Minimum over the 6 vertex-triangle and 9 edge-edge feature
// pairs, with a piercing test for proper intersection.
double triangle_triangle_distance(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                                  const Vec3& b0, const Vec3& b1, const Vec3& b2);

// Minimum distance between two meshes: the smallest triangle-pair
// distance. Accelerated by per-triangle AABB pruning; equals the
// brute-force all-pairs value.
double mesh_distance(const Mesh& a, const Mesh& b);

// Ray-parity point containment for closed meshes. Points on or very near
// the surface are not reliably classified; callers combine this with a
// surface-distance threshold.
bool point_in_mesh(const Mesh& mesh, const Vec3& p);

// Distance from p to the surface of the mesh.
double point_mesh_distance(const Mesh& mesh, const Vec3& p);

} // namespace bimsem
