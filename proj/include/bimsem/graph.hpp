#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bimsem/object_record.hpp"
#include "bimsem/relations.hpp"

namespace bimsem {

struct GraphNode {
    std::string cls; // lowercase: wall / floor / window / door
    AttributeMap attributes;
    std::string source_id;
};

// Typed, attributed object nodes plus directed relation edges. Node names
// are "<class>_<id>". Edge endpoints are node names.
struct BimGraph {
    std::map<std::string, GraphNode> nodes;
    std::set<Relation> edges;
};

// Checks all graph invariants: endpoints exist, hosting/hosted inverse
// pairing, adjacentTo symmetry, no self-edges, at most one host per node.
// Throws IntegrityError on violation.
void validate_graph(const BimGraph& graph);

// Assemble records and relations (over object ids) into a graph.
// Throws IntegrityError when a relation names an unknown id.
BimGraph build_graph(const std::vector<ObjectRecord>& records,
                     const std::vector<Relation>& relations);

// Host of a node via its `hosted` edge, if any.
std::optional<std::string> query_host(const BimGraph& graph, const std::string& node);

// Adjacent node names, sorted.
std::vector<std::string> query_adjacent(const BimGraph& graph, const std::string& node);

} // namespace bimsem
