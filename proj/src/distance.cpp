#include "bimsem/distance.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace bimsem {

// Ericson, Real-Time Collision Detection, 5.1.5
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return a + ab * v;
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return a + ac * w;
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + (c - b) * w;
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom, w = vc * denom;
    return a + ab * v + ac * w;
}

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    return distance(p, closest_point_on_triangle(p, a, b, c));
}

// Ericson 5.1.9, clamped closest points of two segments
double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
    const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    double s = 0.0, t = 0.0;

    constexpr double eps = 1e-30;
    if (a <= eps && e <= eps) {
        return distance(p1, p2);
    }
    if (a <= eps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= eps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            if (denom > eps)
                s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p1 + d1 * s, p2 + d2 * t);
}

namespace {

// True when an edge of one triangle passes strictly through the interior
// of the other. Touching configurations are left to the feature-pair
// distances, which evaluate to zero there anyway.
bool edge_pierces_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b,
                           const Vec3& c) {
    const Vec3 n = cross(b - a, c - a);
    const double dp = dot(n, p - a), dq = dot(n, q - a);
    if (!(dp * dq < 0.0)) return false; // same side, touching, or coplanar
    const double t = dp / (dp - dq);
    const Vec3 x = p + (q - p) * t;
    const double s1 = dot(n, cross(b - a, x - a));
    const double s2 = dot(n, cross(c - b, x - b));
    const double s3 = dot(n, cross(a - c, x - c));
    return (s1 > 0.0 && s2 > 0.0 && s3 > 0.0) || (s1 < 0.0 && s2 < 0.0 && s3 < 0.0);
}

bool triangles_pierce(const Vec3& a0, const Vec3& a1, const Vec3& a2, const Vec3& b0,
                      const Vec3& b1, const Vec3& b2) {
    return edge_pierces_triangle(a0, a1, b0, b1, b2) ||
           edge_pierces_triangle(a1, a2, b0, b1, b2) ||
           edge_pierces_triangle(a2, a0, b0, b1, b2) ||
           edge_pierces_triangle(b0, b1, a0, a1, a2) ||
           edge_pierces_triangle(b1, b2, a0, a1, a2) ||
           edge_pierces_triangle(b2, b0, a0, a1, a2);
}

} // namespace

double triangle_triangle_distance(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                                  const Vec3& b0, const Vec3& b1, const Vec3& b2) {
    if (triangles_pierce(a0, a1, a2, b0, b1, b2)) return 0.0;

    double d = point_triangle_distance(a0, b0, b1, b2);
    d = std::min(d, point_triangle_distance(a1, b0, b1, b2));
    d = std::min(d, point_triangle_distance(a2, b0, b1, b2));
    d = std::min(d, point_triangle_distance(b0, a0, a1, a2));
    d = std::min(d, point_triangle_distance(b1, a0, a1, a2));
    d = std::min(d, point_triangle_distance(b2, a0, a1, a2));

    const Vec3* ea[3][2] = {{&a0, &a1}, {&a1, &a2}, {&a2, &a0}};
    const Vec3* eb[3][2] = {{&b0, &b1}, {&b1, &b2}, {&b2, &b0}};
    for (auto& i : ea)
        for (auto& j : eb)
            d = std::min(d, segment_segment_distance(*i[0], *i[1], *j[0], *j[1]));
    return d;
}

namespace {

Aabb triangle_aabb(const Mesh& m, const Triangle& t) {
    Aabb box{m.vertices[t[0]], m.vertices[t[0]]};
    box.expand(m.vertices[t[1]]);
    box.expand(m.vertices[t[2]]);
    return box;
}

double aabb_distance2(const Aabb& a, const Aabb& b) {
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double g = std::max({0.0, a.min[i] - b.max[i], b.min[i] - a.max[i]});
        d2 += g * g;
    }
    return d2;
}

} // namespace

double mesh_distance(const Mesh& a, const Mesh& b) {
    std::vector<Aabb> boxes_a, boxes_b;
    boxes_a.reserve(a.triangles.size());
    boxes_b.reserve(b.triangles.size());
    for (const auto& t : a.triangles) boxes_a.push_back(triangle_aabb(a, t));
    for (const auto& t : b.triangles) boxes_b.push_back(triangle_aabb(b, t));

    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < a.triangles.size(); ++i) {
        for (size_t j = 0; j < b.triangles.size(); ++j) {
            if (aabb_distance2(boxes_a[i], boxes_b[j]) >= best * best) continue;
            const auto& ta = a.triangles[i];
            const auto& tb = b.triangles[j];
            const double d = triangle_triangle_distance(
                a.vertices[ta[0]], a.vertices[ta[1]], a.vertices[ta[2]], b.vertices[tb[0]],
                b.vertices[tb[1]], b.vertices[tb[2]]);
            if (d < best) {
                best = d;
                if (best == 0.0) return 0.0;
            }
        }
    }
    return best;
}

namespace {

struct RayHitScan {
    int crossings = 0;
    bool clean = true;
};

// Moller-Trumbore against every triangle; flags grazing hits so the
// caller can retry with a different direction.
RayHitScan scan_ray(const Mesh& mesh, const Vec3& origin, const Vec3& dir) {
    RayHitScan scan;
    constexpr double eps_det = 1e-12;
    constexpr double eps_bary = 1e-9;
    for (const auto& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3 e1 = mesh.vertices[t[1]] - a;
        const Vec3 e2 = mesh.vertices[t[2]] - a;
        const Vec3 pv = cross(dir, e2);
        const double det = dot(e1, pv);
        if (std::abs(det) < eps_det) continue; // parallel
        const double inv = 1.0 / det;
        const Vec3 tv = origin - a;
        const double u = dot(tv, pv) * inv;
        if (u < -eps_bary || u > 1.0 + eps_bary) continue;
        const Vec3 qv = cross(tv, e1);
        const double v = dot(dir, qv) * inv;
        if (v < -eps_bary || u + v > 1.0 + eps_bary) continue;
        const double hit_t = dot(e2, qv) * inv;
        if (hit_t <= 0.0) continue;
        if (u < eps_bary || v < eps_bary || u + v > 1.0 - eps_bary || hit_t < 1e-9)
            scan.clean = false; // grazing an edge/vertex or starting on the surface
        ++scan.crossings;
    }
    return scan;
}

} // namespace

bool point_in_mesh(const Mesh& mesh, const Vec3& p) {
    static const Vec3 directions[] = {
        {0.287514398921751, 0.616983372354154, 0.732632371297959},
        {-0.518783175957843, 0.703442906512859, 0.485617311281971},
        {0.823145872314598, -0.205173812940128, 0.529431873214975},
        {0.105327891423785, -0.894327815297341, -0.434817293187459},
    };
    RayHitScan last;
    for (const auto& dir : directions) {
        last = scan_ray(mesh, p, dir);
        if (last.clean) break;
    }
    return last.crossings % 2 == 1;
}

double point_mesh_distance(const Mesh& mesh, const Vec3& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : mesh.triangles) {
        best = std::min(best, point_triangle_distance(p, mesh.vertices[t[0]],
                                                      mesh.vertices[t[1]], mesh.vertices[t[2]]));
        if (best == 0.0) break;
    }
    return best;
}

} // namespace bimsem
