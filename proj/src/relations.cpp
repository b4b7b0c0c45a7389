#include "bimsem/relations.hpp"

#include <algorithm>
#include <set>

#include "bimsem/distance.hpp"
#include "bimsem/errors.hpp"

namespace bimsem {

std::string to_string(Predicate p) {
    switch (p) {
        case Predicate::adjacent_to: return "adjacentTo";
        case Predicate::hosted: return "hosted";
        case Predicate::hosting: return "hosting";
    }
    return "?";
}

Predicate predicate_from_string(const std::string& s) {
    if (s == "adjacentTo") return Predicate::adjacent_to;
    if (s == "hosted") return Predicate::hosted;
    if (s == "hosting") return Predicate::hosting;
    throw DataError("unknown predicate '" + s + "'");
}

AabbGap aabb_gap(const Aabb& a, const Aabb& b) {
    AabbGap g;
    g.x = std::max({0.0, a.min.x - b.max.x, b.min.x - a.max.x});
    g.y = std::max({0.0, a.min.y - b.max.y, b.min.y - a.max.y});
    g.z = std::max({0.0, a.min.z - b.max.z, b.min.z - a.max.z});
    g.sum = g.x + g.y + g.z;
    return g;
}

bool contains(const Aabb& outer, const Aabb& inner, double eps) {
    for (int i = 0; i < 3; ++i) {
        if (inner.min[i] < outer.min[i] - eps) return false;
        if (inner.max[i] > outer.max[i] + eps) return false;
    }
    return true;
}

namespace {

// Any vertex of `a` strictly inside the closed mesh `b` by more than eps.
bool penetrates(const Mesh& a, const Mesh& b, const Aabb& b_box, double eps) {
    for (const auto& v : a.vertices) {
        if (v.x < b_box.min.x - eps || v.x > b_box.max.x + eps || v.y < b_box.min.y - eps ||
            v.y > b_box.max.y + eps || v.z < b_box.min.z - eps || v.z > b_box.max.z + eps)
            continue;
        if (point_mesh_distance(b, v) > eps && point_in_mesh(b, v)) return true;
    }
    return false;
}

} // namespace

std::vector<Relation> classify_pair(const ObjectRecord& a, const ObjectRecord& b,
                                    const RelationConfig& cfg,
                                    std::vector<std::string>* diagnostics) {
    const Aabb box_a = aabb(a.mesh);
    const Aabb box_b = aabb(b.mesh);

    // stage 1: bounding-box distance in three axes
    if (aabb_gap(box_a, box_b).sum > cfg.eps_gap) return {};

    // stage 2: exact geometry distance
    if (mesh_distance(a.mesh, b.mesh) > cfg.eps_contact) return {};

    // overlapping objects are neither adjacent nor hosting
    if (penetrates(a.mesh, b.mesh, box_b, cfg.eps_contact) ||
        penetrates(b.mesh, a.mesh, box_a, cfg.eps_contact)) {
        if (diagnostics)
            diagnostics->push_back("pair (" + a.id + ", " + b.id +
                                   ") interpenetrates; skipped");
        return {};
    }

    // stage 3: containment decides hosting, otherwise adjacency
    const bool a_contains_b = contains(box_a, box_b, cfg.eps_contain);
    const bool b_contains_a = contains(box_b, box_a, cfg.eps_contain);
    if (a_contains_b && !b_contains_a)
        return {{a.id, Predicate::hosting, b.id}, {b.id, Predicate::hosted, a.id}};
    if (b_contains_a && !a_contains_b)
        return {{b.id, Predicate::hosting, a.id}, {a.id, Predicate::hosted, b.id}};
    if (a_contains_b && b_contains_a && diagnostics)
        diagnostics->push_back("pair (" + a.id + ", " + b.id +
                               ") mutually contained; treated as adjacent");
    return {{a.id, Predicate::adjacent_to, b.id}, {b.id, Predicate::adjacent_to, a.id}};
}

std::vector<Relation> infer_all(const std::vector<ObjectRecord>& objects,
                                const RelationConfig& cfg,
                                std::vector<std::string>* diagnostics) {
    std::set<std::string> ids;
    for (const auto& o : objects)
        if (!ids.insert(o.id).second)
            throw DataError("id-collision: duplicate object id '" + o.id + "'");

    std::vector<Relation> out;
    for (size_t i = 0; i < objects.size(); ++i) {
        for (size_t j = i + 1; j < objects.size(); ++j) {
            auto rels = classify_pair(objects[i], objects[j], cfg, diagnostics);
            out.insert(out.end(), rels.begin(), rels.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bimsem
