#include <doctest.h>

#include "bimsem/distance.hpp"
#include "support.hpp"

using namespace bimsem;
using namespace test_support;

TEST_CASE("cubes sharing a face touch") {
    const Mesh a = box_mesh(0, 0, 0, 1, 1, 1);
    const Mesh b = box_mesh(1, 0, 0, 1, 1, 1);
    CHECK(mesh_distance(a, b) == 0.0);
}

TEST_CASE("separated cubes have the gap distance") {
    const Mesh a = box_mesh(0, 0, 0, 1, 1, 1);
    const Mesh b = box_mesh(1.5, 0, 0, 1, 1, 1);
    CHECK(mesh_distance(a, b) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("interpenetrating cubes have zero distance") {
    const Mesh a = box_mesh(0, 0, 0, 2, 2, 2);
    const Mesh b = box_mesh(1, 1, 1, 2, 2, 2);
    CHECK(mesh_distance(a, b) == 0.0);
}

TEST_CASE("piercing triangles are detected") {
    // small triangle skewers the big one through its interior
    const Vec3 a0{-5, -5, 0}, a1{5, -5, 0}, a2{0, 8, 0};
    const Vec3 b0{0, 0, -1}, b1{0.3, 0.1, 1}, b2{-0.2, 0.4, 1};
    CHECK(triangle_triangle_distance(a0, a1, a2, b0, b1, b2) == 0.0);
    CHECK(triangle_triangle_distance(b0, b1, b2, a0, a1, a2) == 0.0);
}

TEST_CASE("coplanar overlapping triangles have zero distance") {
    const Vec3 a0{0, 0, 0}, a1{2, 0, 0}, a2{0, 2, 0};
    const Vec3 b0{0.5, 0.5, 0}, b1{2.5, 0.5, 0}, b2{0.5, 2.5, 0};
    CHECK(triangle_triangle_distance(a0, a1, a2, b0, b1, b2) == 0.0);
}

TEST_CASE("vertex-to-face and edge-to-edge configurations") {
    const Vec3 a0{0, 0, 1}, a1{1, 0, 2}, a2{0, 1, 2}; // apex a0 above the plane
    const Vec3 b0{-5, -5, 0}, b1{5, -5, 0}, b2{0, 8, 0};
    CHECK(triangle_triangle_distance(a0, a1, a2, b0, b1, b2) == doctest::Approx(1.0).epsilon(1e-12));

    // skew edges: closest approach 1 between edge midpoints
    const Vec3 c0{-1, 0, 0}, c1{1, 0, 0}, c2{0, -3, 0};
    const Vec3 d0{0, -1, 1}, d1{0, 1, 1}, d2{0, 3, 3};
    CHECK(triangle_triangle_distance(c0, c1, c2, d0, d1, d2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("box meshes match the analytic box gap") {
    // independent oracle: for axis-aligned boxes the surface distance is
    // the Euclidean norm of the per-axis gaps
    Rng rng(2024);
    for (int i = 0; i < 200; ++i) {
        const Aabb ba = random_aabb(rng), bb = random_aabb(rng);
        const Mesh ma = make_box(ba), mb = make_box(bb);
        double g2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double g = std::max({0.0, ba.min[k] - bb.max[k], bb.min[k] - ba.max[k]});
            g2 += g * g;
        }
        CHECK(mesh_distance(ma, mb) == doctest::Approx(std::sqrt(g2)).epsilon(1e-9));
    }
}

TEST_CASE("accelerated distance equals the brute-force oracle") {
    Rng rng(555);
    for (int i = 0; i < 200; ++i) {
        const Mesh a = make_box(random_aabb(rng));
        const Mesh b = make_box(random_aabb(rng));
        const double fast = mesh_distance(a, b);
        const double brute = mesh_distance_brute(a, b);
        CHECK(std::abs(fast - brute) <= 1e-9);
    }
}

TEST_CASE("mesh distance is symmetric") {
    Rng rng(81);
    for (int i = 0; i < 50; ++i) {
        const Mesh a = make_box(random_aabb(rng));
        const Mesh b = make_box(random_aabb(rng));
        CHECK(std::abs(mesh_distance(a, b) - mesh_distance(b, a)) <= 1e-12);
    }
}

TEST_CASE("point containment in a cube") {
    const Mesh cube = box_mesh(0, 0, 0, 1, 1, 1);
    CHECK(point_in_mesh(cube, {0.5, 0.5, 0.5}));
    CHECK_FALSE(point_in_mesh(cube, {1.5, 0.5, 0.5}));
    CHECK_FALSE(point_in_mesh(cube, {-0.1, -0.1, -0.1}));
}

TEST_CASE("point containment in a wall with an opening") {
    const Mesh wall = make_wall_with_openings({{0, 0, 0}, {4, 0.2, 3}}, 0, {{1.4, 2.6, 0.9, 2.3}});
    CHECK(point_in_mesh(wall, {0.5, 0.1, 1.5}));        // solid part
    CHECK_FALSE(point_in_mesh(wall, {2.0, 0.1, 1.5}));  // inside the opening void
    CHECK_FALSE(point_in_mesh(wall, {2.0, 0.1, 3.5}));  // above the wall
}

TEST_CASE("point to mesh surface distance") {
    const Mesh cube = box_mesh(0, 0, 0, 1, 1, 1);
    CHECK(point_mesh_distance(cube, {0.5, 0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(point_mesh_distance(cube, {2.0, 0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(point_mesh_distance(cube, {1.0, 0.5, 0.5}) == 0.0);
}
