#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "bimsem/distance.hpp"
#include "bimsem/geometry.hpp"
#include "bimsem/primitives.hpp"
#include "bimsem/rng.hpp"

namespace test_support {

using namespace bimsem;

// Independent oracle: minimum distance over every triangle pair, no
// pruning. The acceleration in mesh_distance must reproduce this exactly.
inline double mesh_distance_brute(const Mesh& a, const Mesh& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ta : a.triangles)
        for (const auto& tb : b.triangles)
            best = std::min(best, triangle_triangle_distance(
                                      a.vertices[ta[0]], a.vertices[ta[1]], a.vertices[ta[2]],
                                      b.vertices[tb[0]], b.vertices[tb[1]], b.vertices[tb[2]]));
    return best;
}

inline Mesh box_mesh(double x0, double y0, double z0, double sx, double sy, double sz) {
    return make_box({{x0, y0, z0}, {x0 + sx, y0 + sy, z0 + sz}});
}

inline Aabb random_aabb(Rng& rng, double span = 10.0) {
    Vec3 origin{rng.uniform(-span, span), rng.uniform(-span, span), rng.uniform(-span, span)};
    Vec3 size{rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0), rng.uniform(0.1, 4.0)};
    return {origin, origin + size};
}

inline bool approx_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Unique temp path under the build tree.
inline std::string temp_path(const std::string& name) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() / "bimsem_tests";
    std::filesystem::create_directories(dir);
    return (dir / (std::to_string(counter++) + "_" + name)).string();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace test_support
