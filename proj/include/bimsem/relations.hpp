#pragma once

#include <compare>
#include <string>
#include <vector>

#include "bimsem/geometry.hpp"
#include "bimsem/object_record.hpp"

namespace bimsem {

enum class Predicate { adjacent_to, hosted, hosting };

std::string to_string(Predicate p);
Predicate predicate_from_string(const std::string& s);

// Directed relation edge. hosting(A,B) always pairs with hosted(B,A);
// adjacentTo is stored in both directions.
struct Relation {
    std::string subject;
    Predicate predicate;
    std::string object;

    auto operator<=>(const Relation&) const = default;
};

struct RelationConfig {
    double eps_gap = 1e-6;     // stage 1: max allowed AABB gap sum
    double eps_contact = 1e-3; // stage 2: max allowed exact mesh distance
    double eps_contain = 1e-3; // stage 3: AABB containment slack
};

struct AabbGap {
    double x = 0, y = 0, z = 0;
    double sum = 0;
};

// Per-axis separation of two AABBs: max(0, a.min-b.max, b.min-a.max).
// The sum is zero exactly when the boxes touch or overlap on every axis.
AabbGap aabb_gap(const Aabb& a, const Aabb& b);

// outer contains inner within eps on all three axes.
bool contains(const Aabb& outer, const Aabb& inner, double eps);

// Three-stage rule: AABB gap filter, exact mesh distance filter, then
// AABB containment decides hosting direction; otherwise adjacency.
// Interpenetrating pairs (a vertex of one strictly inside the other by
// more than eps_contact) are skipped. Returns 0 or 2 relations.
std::vector<Relation> classify_pair(const ObjectRecord& a, const ObjectRecord& b,
                                    const RelationConfig& cfg,
                                    std::vector<std::string>* diagnostics = nullptr);

// classify_pair over all unordered pairs; result sorted by
// (subject, predicate, object). Throws DataError on duplicate ids.
std::vector<Relation> infer_all(const std::vector<ObjectRecord>& objects,
                                const RelationConfig& cfg,
                                std::vector<std::string>* diagnostics = nullptr);

} // namespace bimsem
