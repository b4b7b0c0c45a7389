#include <doctest.h>

#include "bimsem/errors.hpp"
#include "bimsem/ply.hpp"
#include "support.hpp"

using namespace bimsem;
using namespace test_support;

namespace {

const char* kCubeAscii =
    "ply\n"
    "format ascii 1.0\n"
    "comment unit cube\n"
    "element vertex 8\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "element face 12\n"
    "property list uchar int vertex_indices\n"
    "end_header\n"
    "0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n"
    "3 0 2 1\n3 0 3 2\n3 4 5 6\n3 4 6 7\n3 0 1 5\n3 0 5 4\n"
    "3 2 3 7\n3 2 7 6\n3 0 4 7\n3 0 7 3\n3 1 2 6\n3 1 6 5\n";

const char* kCubeQuads =
    "ply\n"
    "format ascii 1.0\n"
    "element vertex 8\n"
    "property float x\n"
    "property float y\n"
    "property float z\n"
    "element face 6\n"
    "property list uchar int vertex_indices\n"
    "end_header\n"
    "0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n"
    "4 0 3 2 1\n4 4 5 6 7\n4 0 1 5 4\n4 2 3 7 6\n4 0 4 7 3\n4 1 2 6 5\n";

} // namespace

TEST_CASE("ascii unit cube loads") {
    const auto path = temp_path("cube.ply");
    write_file(path, kCubeAscii);
    const Mesh m = load_ply(path);
    CHECK(m.vertices.size() == 8);
    CHECK(m.triangles.size() == 12);
    CHECK(volume(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quad faces are fan-triangulated") {
    const auto path = temp_path("cube_quads.ply");
    write_file(path, kCubeQuads);
    const Mesh m = load_ply(path);
    CHECK(m.vertices.size() == 8);
    CHECK(m.triangles.size() == 12);
    CHECK(volume(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pentagon face becomes three triangles") {
    const auto path = temp_path("pentagon.ply");
    write_file(path,
               "ply\nformat ascii 1.0\n"
               "element vertex 5\n"
               "property float x\nproperty float y\nproperty float z\n"
               "element face 1\nproperty list uchar int vertex_indices\n"
               "end_header\n"
               "0 0 0\n2 0 0\n3 2 0\n1 3 0\n-1 2 0\n"
               "5 0 1 2 3 4\n");
    const Mesh m = load_ply(path);
    CHECK(m.triangles.size() == 3);
}

TEST_CASE("missing end_header is a format error") {
    const auto path = temp_path("no_end.ply");
    write_file(path,
               "ply\nformat ascii 1.0\nelement vertex 3\n"
               "property float x\nproperty float y\nproperty float z\n"
               "0 0 0\n1 0 0\n0 1 0\n");
    CHECK_THROWS_AS(load_ply(path), FormatError);
}

TEST_CASE("face index out of range is a data error") {
    const auto path = temp_path("bad_index.ply");
    write_file(path,
               "ply\nformat ascii 1.0\n"
               "element vertex 3\n"
               "property float x\nproperty float y\nproperty float z\n"
               "element face 1\nproperty list uchar int vertex_indices\n"
               "end_header\n"
               "0 0 0\n1 0 0\n0 1 0\n"
               "3 0 1 7\n");
    CHECK_THROWS_AS(load_ply(path), DataError);
}

TEST_CASE("empty element lists are rejected") {
    const auto path = temp_path("empty.ply");
    write_file(path,
               "ply\nformat ascii 1.0\n"
               "element vertex 0\n"
               "property float x\nproperty float y\nproperty float z\n"
               "element face 0\nproperty list uchar int vertex_indices\n"
               "end_header\n");
    CHECK_THROWS_AS(load_ply(path), DataError);
}

TEST_CASE("extra vertex properties are skipped") {
    const auto path = temp_path("extra_props.ply");
    write_file(path,
               "ply\nformat ascii 1.0\n"
               "element vertex 3\n"
               "property float x\nproperty float y\nproperty float z\n"
               "property float nx\nproperty float ny\nproperty float nz\n"
               "property uchar red\n"
               "element face 1\nproperty list uchar int vertex_index\n"
               "end_header\n"
               "0 0 0 0 0 1 255\n1 0 0 0 0 1 255\n0 1 0 0 0 1 255\n"
               "3 0 1 2\n");
    const Mesh m = load_ply(path);
    CHECK(m.vertices.size() == 3);
    CHECK(m.vertices[1] == Vec3{1, 0, 0});
    CHECK(m.triangles.size() == 1);
}

TEST_CASE("write then load reproduces the mesh") {
    const Mesh cube = box_mesh(0.25, -3.5, 12.0, 1.5, 2.25, 0.4);
    const auto path = temp_path("roundtrip.ply");
    write_ply(cube, path);
    const Mesh loaded = load_ply(path);
    REQUIRE(loaded.vertices.size() == cube.vertices.size());
    REQUIRE(loaded.triangles.size() == cube.triangles.size());
    for (size_t i = 0; i < cube.vertices.size(); ++i) {
        CHECK(approx_rel(loaded.vertices[i].x, cube.vertices[i].x, 1e-9));
        CHECK(approx_rel(loaded.vertices[i].y, cube.vertices[i].y, 1e-9));
        CHECK(approx_rel(loaded.vertices[i].z, cube.vertices[i].z, 1e-9));
    }
    CHECK(loaded.triangles == cube.triangles);
}

TEST_CASE("ascii round-trip is exact at stored precision") {
    Rng rng(99);
    const Mesh m = box_mesh(rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(0, 5),
                            rng.uniform(0.1, 4), rng.uniform(0.1, 4), rng.uniform(0.1, 4));
    const auto p1 = temp_path("prec1.ply");
    const auto p2 = temp_path("prec2.ply");
    write_ply(m, p1);
    write_ply(load_ply(p1), p2);
    CHECK(read_file(p1) == read_file(p2));
}

TEST_CASE("single-triangle mesh round-trips") {
    Mesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    m.triangles = {{0, 1, 2}};
    const auto path = temp_path("tri.ply");
    write_ply(m, path);
    const Mesh loaded = load_ply(path);
    CHECK(loaded.vertices.size() == 3);
    CHECK(loaded.triangles.size() == 1);
}

TEST_CASE("empty mesh is refused by the writer") {
    Mesh empty;
    CHECK_THROWS_AS(write_ply(empty, temp_path("empty_out.ply")), DataError);
}

TEST_CASE("binary little-endian round-trip") {
    const Mesh cube = box_mesh(-1, 2, 3, 2, 1, 4);
    const auto path = temp_path("cube_binary.ply");
    write_ply(cube, path, PlyFormat::binary_little_endian);
    const Mesh loaded = load_ply(path);
    REQUIRE(loaded.vertices.size() == cube.vertices.size());
    for (size_t i = 0; i < cube.vertices.size(); ++i)
        CHECK(loaded.vertices[i] == cube.vertices[i]); // float64 is bit-exact
    CHECK(loaded.triangles == cube.triangles);
}

TEST_CASE("unreadable path raises io error") {
    CHECK_THROWS_AS(load_ply("/nonexistent/nowhere.ply"), IoError);
}
