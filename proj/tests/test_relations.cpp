#include <doctest.h>

#include <algorithm>

#include "bimsem/errors.hpp"
#include "bimsem/relations.hpp"
#include "bimsem/scenegen.hpp"
#include "support.hpp"

using namespace bimsem;
using namespace test_support;

namespace {

ObjectRecord record(const std::string& id, Mesh mesh) {
    ObjectRecord r;
    r.id = id;
    r.mesh = std::move(mesh);
    return r;
}

bool has(const std::vector<Relation>& rels, const std::string& s, Predicate p,
         const std::string& o) {
    return std::find(rels.begin(), rels.end(), Relation{s, p, o}) != rels.end();
}

} // namespace

TEST_CASE("aabb gap examples") {
    const Aabb a{{0, 0, 0}, {1, 1, 1}};
    const Aabb touching{{1, 0, 0}, {2, 1, 1}};
    const Aabb apart{{2, 0, 0}, {3, 1, 1}};
    const Aabb overlapping{{0.5, 0.5, 0.5}, {1.5, 1.5, 1.5}};

    CHECK(aabb_gap(a, touching).sum == 0.0);
    const AabbGap g = aabb_gap(a, apart);
    CHECK(g.x == 1.0);
    CHECK(g.y == 0.0);
    CHECK(g.z == 0.0);
    CHECK(g.sum == 1.0);
    CHECK(aabb_gap(a, overlapping).sum == 0.0);
    CHECK(aabb_gap(apart, a).sum == 1.0); // symmetric
}

TEST_CASE("containment examples") {
    const Aabb wall{{0, 0, 0}, {4, 0.2, 3}};
    const Aabb window{{1.4, 0.05, 0.9}, {2.6, 0.15, 2.3}};
    const Aabb disjoint{{9, 9, 9}, {10, 10, 10}};
    CHECK(contains(wall, window, 1e-3));
    CHECK_FALSE(contains(window, wall, 1e-3));
    CHECK(contains(wall, wall, 1e-3)); // identical boxes, mutual by eps
    CHECK_FALSE(contains(wall, disjoint, 1e-3));
}

TEST_CASE("wall hosts the window fitted into its opening") {
    const Mesh wall = make_wall_with_openings({{0, 0, 0}, {4, 0.2, 3}}, 0, {{1.4, 2.6, 0.9, 2.3}});
    const Mesh window = box_mesh(1.4, 0.05, 0.9, 1.2, 0.1, 1.4);
    const auto rels = classify_pair(record("wall", wall), record("win", window), {});
    REQUIRE(rels.size() == 2);
    CHECK(has(rels, "wall", Predicate::hosting, "win"));
    CHECK(has(rels, "win", Predicate::hosted, "wall"));
}

TEST_CASE("perpendicular walls meeting at a corner are adjacent") {
    const Mesh a = box_mesh(0, 0, 0, 4, 0.2, 3);       // along x
    const Mesh b = box_mesh(0, 0.2, 0, 0.2, 3.8, 3);   // along y, touching a's face
    const auto rels = classify_pair(record("a", a), record("b", b), {});
    REQUIRE(rels.size() == 2);
    CHECK(has(rels, "a", Predicate::adjacent_to, "b"));
    CHECK(has(rels, "b", Predicate::adjacent_to, "a"));
}

TEST_CASE("distant objects get no relation") {
    const Mesh a = box_mesh(0, 0, 0, 4, 0.2, 3);
    const Mesh b = box_mesh(0, 2.2, 0, 4, 0.2, 3);
    CHECK(classify_pair(record("a", a), record("b", b), {}).empty());
}

TEST_CASE("mutual containment resolves to adjacency with a diagnostic") {
    const Mesh a = box_mesh(0, 0, 0, 1, 1, 1);
    std::vector<std::string> diag;
    const auto rels = classify_pair(record("a", a), record("b", a), {}, &diag);
    REQUIRE(rels.size() == 2);
    CHECK(rels[0].predicate == Predicate::adjacent_to);
    CHECK(diag.size() == 1);
}

TEST_CASE("interpenetrating pairs are skipped with a diagnostic") {
    // box corner poked through the wall face: surfaces cross, vertices of
    // the box sit strictly inside the wall solid
    const Mesh wall = box_mesh(0, 0, 0, 4, 0.2, 3);
    const Mesh poked = box_mesh(1.4, 0.1, 0.9, 1.2, 0.3, 1.4);
    std::vector<std::string> diag;
    const auto rels = classify_pair(record("wall", wall), record("box", poked), {}, &diag);
    CHECK(rels.empty());
    CHECK(diag.size() == 1);
}

TEST_CASE("deeply buried overlap is dropped silently at the distance stage") {
    // fully inside: surface-to-surface distance exceeds the contact eps
    const Mesh wall = box_mesh(0, 0, 0, 4, 0.2, 3);
    const Mesh buried = box_mesh(1.4, 0.05, 0.9, 1.2, 0.1, 1.4);
    CHECK(classify_pair(record("wall", wall), record("box", buried), {}).empty());
}

TEST_CASE("single object yields no relations") {
    std::vector<ObjectRecord> objs;
    objs.push_back(record("only", box_mesh(0, 0, 0, 1, 1, 1)));
    CHECK(infer_all(objs, {}).empty());
}

TEST_CASE("duplicate ids collide") {
    std::vector<ObjectRecord> objs;
    objs.push_back(record("x", box_mesh(0, 0, 0, 1, 1, 1)));
    objs.push_back(record("x", box_mesh(5, 0, 0, 1, 1, 1)));
    CHECK_THROWS_AS(infer_all(objs, {}), DataError);
}

TEST_CASE("inferred relations match the generator ground truth") {
    for (uint64_t seed : {1ULL, 17ULL, 123456ULL}) {
        SceneSpec spec;
        spec.seed = seed;
        spec.rooms_x = 1;
        spec.rooms_y = 1;
        const Scene scene = generate_scene(spec);

        std::vector<ObjectRecord> objs;
        for (const auto& o : scene.objects) objs.push_back(record(o.id, o.mesh));
        const auto inferred = infer_all(objs, {});
        CHECK(inferred == scene.truth.relations);
    }
}

TEST_CASE("inference is invariant under input permutation") {
    SceneSpec spec;
    spec.seed = 40;
    const Scene scene = generate_scene(spec);
    std::vector<ObjectRecord> objs;
    for (const auto& o : scene.objects) objs.push_back(record(o.id, o.mesh));
    const auto base = infer_all(objs, {});

    Rng rng(9);
    for (int trial = 0; trial < 3; ++trial) {
        rng.shuffle(objs);
        CHECK(infer_all(objs, {}) == base);
    }
}

TEST_CASE("stage-1 filter is sound for classified pairs") {
    SceneSpec spec;
    spec.seed = 77;
    const Scene scene = generate_scene(spec);
    std::vector<ObjectRecord> objs;
    for (const auto& o : scene.objects) objs.push_back(record(o.id, o.mesh));
    RelationConfig cfg;
    const auto rels = infer_all(objs, cfg);

    auto find = [&](const std::string& id) -> const ObjectRecord& {
        for (const auto& o : objs)
            if (o.id == id) return o;
        throw std::logic_error("missing");
    };
    for (const auto& r : rels) {
        const AabbGap g = aabb_gap(aabb(find(r.subject).mesh), aabb(find(r.object).mesh));
        CHECK(g.sum <= cfg.eps_gap);
    }
}

TEST_CASE("hosting pairing and adjacency symmetry hold on inferred sets") {
    SceneSpec spec;
    spec.seed = 4242;
    const Scene scene = generate_scene(spec);
    std::vector<ObjectRecord> objs;
    for (const auto& o : scene.objects) objs.push_back(record(o.id, o.mesh));
    const auto rels = infer_all(objs, {});
    REQUIRE(!rels.empty());
    for (const auto& r : rels) {
        if (r.predicate == Predicate::hosting)
            CHECK(has(rels, r.object, Predicate::hosted, r.subject));
        if (r.predicate == Predicate::hosted)
            CHECK(has(rels, r.object, Predicate::hosting, r.subject));
        if (r.predicate == Predicate::adjacent_to)
            CHECK(has(rels, r.object, Predicate::adjacent_to, r.subject));
        CHECK(r.subject != r.object);
    }
}
