#include <doctest.h>

#include "bimsem/attributes.hpp"
#include "bimsem/errors.hpp"
#include "bimsem/reconstruct.hpp"
#include "support.hpp"

using namespace bimsem;
using namespace test_support;

namespace {

BimGraph wall_only_graph() {
    BimGraph g;
    GraphNode wall;
    wall.cls = "wall";
    wall.source_id = "1";
    wall.attributes = compute_attributes(box_mesh(0, 0, 0, 4, 0.2, 3), "wall");
    g.nodes["wall_1"] = wall;
    return g;
}

BimGraph wall_window_graph() {
    BimGraph g = wall_only_graph();
    GraphNode window;
    window.cls = "window";
    window.source_id = "2";
    window.attributes = compute_attributes(box_mesh(1.4, 0.05, 0.9, 1.2, 0.1, 1.4), "window");
    g.nodes["window_2"] = window;
    g.edges.insert({"wall_1", Predicate::hosting, "window_2"});
    g.edges.insert({"window_2", Predicate::hosted, "wall_1"});
    return g;
}

} // namespace

TEST_CASE("wall plan derives the centerline from attributes") {
    const ReconstructionPlan plan = plan_from_graph(wall_only_graph());
    REQUIRE(plan.commands.size() == 1);
    const auto& w = std::get<CreateWall>(plan.commands[0]);
    CHECK(w.start.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.start.y == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(w.start.z == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(w.end.x == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(w.end.y == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(w.height == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(w.thickness == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("walls precede hosted placements in the plan") {
    const ReconstructionPlan plan = plan_from_graph(wall_window_graph());
    REQUIRE(plan.commands.size() == 2);
    CHECK(std::holds_alternative<CreateWall>(plan.commands[0]));
    const auto& h = std::get<PlaceHosted>(plan.commands[1]);
    CHECK(h.kind == "window");
    CHECK(h.host == "wall_1");
}

TEST_CASE("hosted node without a host edge is a plan error") {
    BimGraph g = wall_only_graph();
    GraphNode window;
    window.cls = "window";
    window.source_id = "9";
    window.attributes = compute_attributes(box_mesh(1.4, 0.05, 0.9, 1.2, 0.1, 1.4), "window");
    g.nodes["window_9"] = window;
    CHECK_THROWS_WITH_AS(plan_from_graph(g), doctest::Contains("window_9"), PlanError);
}

TEST_CASE("missing attributes are reported") {
    BimGraph g = wall_only_graph();
    g.nodes["wall_1"].attributes.scalars.erase("length");
    CHECK_THROWS_WITH_AS(plan_from_graph(g), doctest::Contains("length"), DataError);
}

TEST_CASE("realize produces solid boxes with openings cut") {
    const auto objects = realize(plan_from_graph(wall_window_graph()));
    REQUIRE(objects.size() == 2);
    CHECK(objects[0].cls == "wall");
    CHECK(volume(objects[0].mesh) == doctest::Approx(2.4 - 1.2 * 1.4 * 0.2).epsilon(1e-9));
    CHECK(objects[1].cls == "window");
    CHECK(volume(objects[1].mesh) == doctest::Approx(1.2 * 0.1 * 1.4).epsilon(1e-9));

    const auto simple = realize(plan_from_graph(wall_only_graph()));
    REQUIRE(simple.size() == 1);
    CHECK(volume(simple[0].mesh) == doctest::Approx(2.4).epsilon(1e-9));
}

TEST_CASE("floors realize from area and perimeter") {
    BimGraph g;
    GraphNode floor;
    floor.cls = "floor";
    floor.source_id = "5";
    floor.attributes = compute_attributes(box_mesh(1, 2, -0.25, 5, 4, 0.25), "floor");
    g.nodes["floor_5"] = floor;
    const auto objects = realize(plan_from_graph(g));
    REQUIRE(objects.size() == 1);
    const Aabb box = aabb(objects[0].mesh);
    CHECK(box.min.x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(box.min.y == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(box.max.x == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(box.max.y == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(box.min.z == doctest::Approx(-0.25).epsilon(1e-9));
    CHECK(box.max.z == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("hosted box outside the host wall is a geometry error") {
    BimGraph g = wall_window_graph();
    g.nodes["window_2"].attributes.central_point = Vec3{3.8, 0.1, 1.6}; // spills past the end
    CHECK_THROWS_AS(realize(plan_from_graph(g)), GeometryError);
}

TEST_CASE("plan json round-trips") {
    const ReconstructionPlan plan = plan_from_graph(wall_window_graph());
    const auto path = temp_path("plan.json");
    save_plan(plan, path);
    const ReconstructionPlan loaded = load_plan(path);
    REQUIRE(loaded.commands.size() == plan.commands.size());
    const auto& w = std::get<CreateWall>(loaded.commands[0]);
    CHECK(w.id == "wall_1");
    CHECK(w.height == doctest::Approx(3.0));
    const auto& h = std::get<PlaceHosted>(loaded.commands[1]);
    CHECK(h.host == "wall_1");
    CHECK(h.width == doctest::Approx(1.2));

    const std::string text = read_file(path);
    CHECK(text.find("\"units\": \"m\"") != std::string::npos);
}

TEST_CASE("plans are deterministic for identical graphs") {
    const auto p1 = temp_path("plan_a.json");
    const auto p2 = temp_path("plan_b.json");
    save_plan(plan_from_graph(wall_window_graph()), p1);
    save_plan(plan_from_graph(wall_window_graph()), p2);
    CHECK(read_file(p1) == read_file(p2));
}

TEST_CASE("hosted placement before its wall is rejected") {
    ReconstructionPlan plan;
    PlaceHosted h;
    h.id = "window_1";
    h.kind = "window";
    h.host = "wall_1";
    h.center = {2, 0.1, 1.5};
    h.width = 1;
    h.height = 1;
    h.depth = 0.1;
    plan.commands.push_back(h);
    CreateWall w;
    w.id = "wall_1";
    w.start = {0, 0.1, 0};
    w.end = {4, 0.1, 0};
    w.height = 3;
    w.thickness = 0.2;
    plan.commands.push_back(w);
    CHECK_THROWS_AS(realize(plan), PlanError);
}

TEST_CASE("scene comparison") {
    const auto objects = realize(plan_from_graph(wall_window_graph()));

    SUBCASE("identity passes with zero deltas") {
        const ComparisonReport r = compare_scenes(objects, objects, 1e-3);
        CHECK(r.pass);
        REQUIRE(r.matches.size() == 2);
        for (const auto& m : r.matches) {
            CHECK(m.center_delta == 0.0);
            CHECK(m.extent_delta.x == 0.0);
        }
    }
    SUBCASE("renumbered ids still pass") {
        auto renamed = objects;
        renamed[0].id = "101";
        renamed[1].id = "205";
        std::swap(renamed[0], renamed[1]);
        const ComparisonReport r = compare_scenes(objects, renamed, 1e-3);
        CHECK(r.pass);
    }
    SUBCASE("a translated wall fails") {
        auto moved = objects;
        moved[0].mesh = translated(moved[0].mesh, {0.5, 0, 0});
        const ComparisonReport r = compare_scenes(objects, moved, 1e-3);
        CHECK_FALSE(r.pass);
    }
    SUBCASE("missing object leaves an unmatched entry") {
        auto partial = objects;
        partial.pop_back();
        const ComparisonReport r = compare_scenes(objects, partial, 1e-3);
        CHECK_FALSE(r.pass);
        REQUIRE(r.unmatched_original.size() == 1);
    }
}
