#include "bimsem/primitives.hpp"

#include <algorithm>
#include <map>

#include "bimsem/errors.hpp"

namespace bimsem {

namespace {

// Accumulates triangles while deduplicating vertices by exact coordinate
// match. All coordinates come from a shared grid, so exact match is safe.
class MeshBuilder {
public:
    int vertex(const Vec3& p) {
        auto key = std::array<double, 3>{p.x, p.y, p.z};
        auto [it, inserted] = index_.try_emplace(key, static_cast<int>(mesh_.vertices.size()));
        if (inserted) mesh_.vertices.push_back(p);
        return it->second;
    }

    // Quad (p00,p10,p11,p01) split into two triangles, wound so the face
    // normal points along `outward`.
    void rect(const Vec3& p00, const Vec3& p10, const Vec3& p11, const Vec3& p01,
              const Vec3& outward) {
        int i00 = vertex(p00), i10 = vertex(p10), i11 = vertex(p11), i01 = vertex(p01);
        Vec3 n = cross(p10 - p00, p11 - p00);
        if (dot(n, outward) >= 0.0) {
            mesh_.triangles.push_back({i00, i10, i11});
            mesh_.triangles.push_back({i00, i11, i01});
        } else {
            mesh_.triangles.push_back({i00, i11, i10});
            mesh_.triangles.push_back({i00, i01, i11});
        }
    }

    Mesh take() { return std::move(mesh_); }

private:
    Mesh mesh_;
    std::map<std::array<double, 3>, int> index_;
};

Vec3 axis_point(int a, double va, int b, double vb, int c, double vc) {
    Vec3 p;
    p[a] = va;
    p[b] = vb;
    p[c] = vc;
    return p;
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

Mesh make_box(const Aabb& box) {
    const double x0 = box.min.x, y0 = box.min.y, z0 = box.min.z;
    const double x1 = box.max.x, y1 = box.max.y, z1 = box.max.z;
    MeshBuilder b;
    b.rect({x0, y0, z0}, {x1, y0, z0}, {x1, y1, z0}, {x0, y1, z0}, {0, 0, -1});
    b.rect({x0, y0, z1}, {x1, y0, z1}, {x1, y1, z1}, {x0, y1, z1}, {0, 0, 1});
    b.rect({x0, y0, z0}, {x1, y0, z0}, {x1, y0, z1}, {x0, y0, z1}, {0, -1, 0});
    b.rect({x0, y1, z0}, {x1, y1, z0}, {x1, y1, z1}, {x0, y1, z1}, {0, 1, 0});
    b.rect({x0, y0, z0}, {x0, y1, z0}, {x0, y1, z1}, {x0, y0, z1}, {-1, 0, 0});
    b.rect({x1, y0, z0}, {x1, y1, z0}, {x1, y1, z1}, {x1, y0, z1}, {1, 0, 0});
    return b.take();
}

Mesh make_wall_with_openings(const Aabb& box, int run_axis,
                             const std::vector<OpeningRect>& openings) {
    if (run_axis != 0 && run_axis != 1)
        throw GeometryError("wall run axis must be 0 (x) or 1 (y)");
    const int R = run_axis;       // along the wall
    const int T = 1 - run_axis;   // through the thickness
    const int Z = 2;

    const double r0 = box.min[R], r1 = box.max[R];
    const double t0 = box.min[T], t1 = box.max[T];
    const double z0 = box.min[Z], z1 = box.max[Z];

    for (const auto& o : openings) {
        if (o.a0 <= r0 || o.a1 >= r1 || o.z1 >= z1 || o.z0 < z0 || o.a0 >= o.a1 || o.z0 >= o.z1)
            throw GeometryError("opening outside wall or degenerate");
    }

    // Master grid: all face triangulations share these cut lines so that
    // every edge is matched by the neighbouring face (no T-junctions).
    std::vector<double> rs{r0, r1}, zs{z0, z1};
    for (const auto& o : openings) {
        rs.push_back(o.a0);
        rs.push_back(o.a1);
        zs.push_back(o.z0);
        zs.push_back(o.z1);
    }
    rs = sorted_unique(rs);
    zs = sorted_unique(zs);

    auto in_opening = [&](double r, double z) -> const OpeningRect* {
        for (const auto& o : openings)
            if (r > o.a0 && r < o.a1 && z > o.z0 && z < o.z1) return &o;
        return nullptr;
    };

    MeshBuilder b;
    auto P = [&](double r, double t, double z) { return axis_point(R, r, T, t, Z, z); };

    // big faces at t0 / t1, skipping opening cells
    for (size_t i = 0; i + 1 < rs.size(); ++i) {
        for (size_t j = 0; j + 1 < zs.size(); ++j) {
            const double ra = rs[i], rb = rs[i + 1], za = zs[j], zb = zs[j + 1];
            if (in_opening(0.5 * (ra + rb), 0.5 * (za + zb))) continue;
            Vec3 out_lo = axis_point(T, -1, R, 0, Z, 0);
            Vec3 out_hi = axis_point(T, 1, R, 0, Z, 0);
            b.rect(P(ra, t0, za), P(rb, t0, za), P(rb, t0, zb), P(ra, t0, zb), out_lo);
            b.rect(P(ra, t1, za), P(rb, t1, za), P(rb, t1, zb), P(ra, t1, zb), out_hi);
        }
    }

    // end faces at r0 / r1, subdivided along z
    for (size_t j = 0; j + 1 < zs.size(); ++j) {
        const double za = zs[j], zb = zs[j + 1];
        Vec3 out_lo = axis_point(R, -1, T, 0, Z, 0);
        Vec3 out_hi = axis_point(R, 1, T, 0, Z, 0);
        b.rect(P(r0, t0, za), P(r0, t1, za), P(r0, t1, zb), P(r0, t0, zb), out_lo);
        b.rect(P(r1, t0, za), P(r1, t1, za), P(r1, t1, zb), P(r1, t0, zb), out_hi);
    }

    // top and bottom, subdivided along r; bottom skips door strips
    for (size_t i = 0; i + 1 < rs.size(); ++i) {
        const double ra = rs[i], rb = rs[i + 1];
        b.rect(P(ra, t0, z1), P(rb, t0, z1), P(rb, t1, z1), P(ra, t1, z1),
               axis_point(Z, 1, R, 0, T, 0));
        bool flush_door = false;
        for (const auto& op : openings)
            if (op.z0 == z0 && 0.5 * (ra + rb) > op.a0 && 0.5 * (ra + rb) < op.a1)
                flush_door = true;
        if (!flush_door)
            b.rect(P(ra, t0, z0), P(rb, t0, z0), P(rb, t1, z0), P(ra, t1, z0),
                   axis_point(Z, -1, R, 0, T, 0));
    }

    // tunnel faces per opening
    for (const auto& o : openings) {
        // sides at a0 / a1, subdivided by the z grid inside the opening
        for (size_t j = 0; j + 1 < zs.size(); ++j) {
            const double za = zs[j], zb = zs[j + 1];
            if (za < o.z0 || zb > o.z1) continue;
            b.rect(P(o.a0, t0, za), P(o.a0, t1, za), P(o.a0, t1, zb), P(o.a0, t0, zb),
                   axis_point(R, 1, T, 0, Z, 0));
            b.rect(P(o.a1, t0, za), P(o.a1, t1, za), P(o.a1, t1, zb), P(o.a1, t0, zb),
                   axis_point(R, -1, T, 0, Z, 0));
        }
        // lintel and sill, subdivided by the r grid inside the opening
        for (size_t i = 0; i + 1 < rs.size(); ++i) {
            const double ra = rs[i], rb = rs[i + 1];
            if (ra < o.a0 || rb > o.a1) continue;
            b.rect(P(ra, t0, o.z1), P(rb, t0, o.z1), P(rb, t1, o.z1), P(ra, t1, o.z1),
                   axis_point(Z, -1, R, 0, T, 0));
            if (o.z0 > z0)
                b.rect(P(ra, t0, o.z0), P(rb, t0, o.z0), P(rb, t1, o.z0), P(ra, t1, o.z0),
                       axis_point(Z, 1, R, 0, T, 0));
        }
    }

    return b.take();
}

} // namespace bimsem
