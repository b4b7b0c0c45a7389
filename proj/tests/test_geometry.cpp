#include <doctest.h>

#include "bimsem/errors.hpp"
#include "bimsem/geometry.hpp"
#include "support.hpp"

using namespace bimsem;
using namespace test_support;

TEST_CASE("unit cube measures") {
    const Mesh cube = box_mesh(0, 0, 0, 1, 1, 1);
    CHECK(cube.vertices.size() == 8);
    CHECK(cube.triangles.size() == 12);

    const Aabb box = aabb(cube);
    CHECK(box.min == Vec3{0, 0, 0});
    CHECK(box.max == Vec3{1, 1, 1});

    CHECK(surface_area(cube) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(volume(cube) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(volume_is_reliable(cube));
}

TEST_CASE("2x3x4 box measures") {
    const Mesh box = box_mesh(0, 0, 0, 2, 3, 4);
    CHECK(surface_area(box) == doctest::Approx(52.0).epsilon(1e-12));
    CHECK(volume(box) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("translated cube aabb") {
    const Mesh cube = translated(box_mesh(0, 0, 0, 1, 1, 1), {5, 0, 0});
    const Aabb box = aabb(cube);
    CHECK(box.min == Vec3{5, 0, 0});
    CHECK(box.max == Vec3{6, 1, 1});
}

TEST_CASE("single triangle aabb") {
    Mesh m;
    m.vertices = {{0, 0, 0}, {2, 0, 0}, {0, 3, 0}};
    m.triangles = {{0, 1, 2}};
    const Aabb box = aabb(m);
    CHECK(box.min == Vec3{0, 0, 0});
    CHECK(box.max == Vec3{2, 3, 0});
}

TEST_CASE("degenerate triangle contributes zero area") {
    Mesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}, {0, 1, 3}};
    CHECK(surface_area(m) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("volume is winding-insensitive") {
    Mesh cube = box_mesh(0, 0, 0, 1, 1, 1);
    for (auto& t : cube.triangles) std::swap(t[1], t[2]);
    CHECK(volume(cube) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("analytic identities on random axis-aligned boxes") {
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(0.05, 8.0);
        const double b = rng.uniform(0.05, 8.0);
        const double c = rng.uniform(0.05, 8.0);
        const Mesh m = box_mesh(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9), a, b, c);
        CHECK(approx_rel(volume(m), a * b * c, 1e-9));
        CHECK(approx_rel(surface_area(m), 2.0 * (a * b + b * c + c * a), 1e-9));
    }
}

TEST_CASE("measures invariant under rigid translation") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const Mesh m = box_mesh(0, 0, 0, rng.uniform(0.1, 5), rng.uniform(0.1, 5),
                                rng.uniform(0.1, 5));
        const Vec3 off{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Mesh t = translated(m, off);
        CHECK(approx_rel(volume(m), volume(t), 1e-9));
        CHECK(approx_rel(surface_area(m), surface_area(t), 1e-9));
    }
}

TEST_CASE("aabb equals per-vertex scan") {
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        Mesh m = box_mesh(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5),
                          rng.uniform(0.1, 3), rng.uniform(0.1, 3), rng.uniform(0.1, 3));
        const Aabb box = aabb(m);
        Vec3 lo = m.vertices[0], hi = m.vertices[0];
        for (const auto& v : m.vertices)
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::min(lo[k], v[k]);
                hi[k] = std::max(hi[k], v[k]);
            }
        CHECK(box.min == lo);
        CHECK(box.max == hi);
    }
}

TEST_CASE("volume invariant under rotation") {
    const Mesh m = box_mesh(0, 0, 0, 2, 3, 0.4);
    const Mesh r = rotated(m, 0, 0.7, {1, 1.5, 0.2});
    CHECK(approx_rel(volume(m), volume(r), 1e-9));
    CHECK(approx_rel(surface_area(m), surface_area(r), 1e-9));
}

TEST_CASE("mesh validation errors") {
    Mesh bad_index = box_mesh(0, 0, 0, 1, 1, 1);
    bad_index.triangles.push_back({0, 1, 99});
    CHECK_THROWS_AS(validate_mesh(bad_index), DataError);

    Mesh tiny;
    tiny.vertices = {{0, 0, 0}, {1, 0, 0}};
    tiny.triangles = {{0, 1, 0}};
    CHECK_THROWS_AS(validate_mesh(tiny), DataError);

    Mesh nan_mesh = box_mesh(0, 0, 0, 1, 1, 1);
    nan_mesh.vertices[0].x = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(validate_mesh(nan_mesh), DataError);
}

TEST_CASE("open mesh flagged unreliable") {
    Mesh open_box = box_mesh(0, 0, 0, 1, 1, 1);
    open_box.triangles.pop_back();
    CHECK_FALSE(volume_is_reliable(open_box));
}

TEST_CASE("wall with openings is watertight and has the cut volume") {
    // 4 x 0.2 x 3 wall with a 1.2 x 1.4 window: volume 2.4 - 0.336
    std::vector<OpeningRect> openings{{1.4, 2.6, 0.9, 2.3}};
    const Mesh wall = make_wall_with_openings({{0, 0, 0}, {4, 0.2, 3}}, 0, openings);
    CHECK(volume_is_reliable(wall));
    CHECK(volume(wall) == doctest::Approx(2.064).epsilon(1e-12));

    // door flush with the base
    std::vector<OpeningRect> door{{1.0, 1.9, 0.0, 2.1}};
    const Mesh wall2 = make_wall_with_openings({{0, 0, 0}, {4, 0.2, 3}}, 0, door);
    CHECK(volume_is_reliable(wall2));
    CHECK(volume(wall2) == doctest::Approx(2.4 - 0.9 * 2.1 * 0.2).epsilon(1e-12));

    // two openings in a wall running along y
    std::vector<OpeningRect> two{{0.5, 1.4, 0.0, 2.0}, {2.0, 3.0, 0.8, 2.2}};
    const Mesh wall3 = make_wall_with_openings({{0, 0, 0}, {0.25, 5, 2.8}}, 1, two);
    CHECK(volume_is_reliable(wall3));
    const double expect = 5 * 0.25 * 2.8 - 0.9 * 2.0 * 0.25 - 1.0 * 1.4 * 0.25;
    CHECK(volume(wall3) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("invalid openings are rejected") {
    CHECK_THROWS_AS(make_wall_with_openings({{0, 0, 0}, {4, 0.2, 3}}, 0,
                                            {{-0.1, 1.0, 0.5, 1.0}}),
                    GeometryError);
    CHECK_THROWS_AS(make_wall_with_openings({{0, 0, 0}, {4, 0.2, 3}}, 0,
                                            {{1.0, 2.0, 0.5, 3.0}}),
                    GeometryError);
}
