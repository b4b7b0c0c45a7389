#include "bimsem/graph.hpp"

#include <algorithm>
#include <cctype>

#include "bimsem/errors.hpp"

namespace bimsem {

void validate_graph(const BimGraph& graph) {
    std::map<std::string, int> host_count;
    for (const auto& e : graph.edges) {
        if (!graph.nodes.count(e.subject))
            throw IntegrityError("referential-integrity: edge subject '" + e.subject +
                                 "' is not a node");
        if (!graph.nodes.count(e.object))
            throw IntegrityError("referential-integrity: edge object '" + e.object +
                                 "' is not a node");
        if (e.subject == e.object)
            throw IntegrityError("self-relation on '" + e.subject + "'");
        switch (e.predicate) {
            case Predicate::hosting:
                if (!graph.edges.count({e.object, Predicate::hosted, e.subject}))
                    throw IntegrityError("hosting(" + e.subject + ", " + e.object +
                                         ") lacks the inverse hosted edge");
                break;
            case Predicate::hosted:
                if (!graph.edges.count({e.object, Predicate::hosting, e.subject}))
                    throw IntegrityError("hosted(" + e.subject + ", " + e.object +
                                         ") lacks the inverse hosting edge");
                ++host_count[e.subject];
                break;
            case Predicate::adjacent_to:
                if (!graph.edges.count({e.object, Predicate::adjacent_to, e.subject}))
                    throw IntegrityError("adjacentTo(" + e.subject + ", " + e.object +
                                         ") is not symmetric");
                break;
        }
    }
    for (const auto& [node, count] : host_count)
        if (count > 1)
            throw IntegrityError("multiplicity: node '" + node + "' has " +
                                 std::to_string(count) + " hosts");
}

BimGraph build_graph(const std::vector<ObjectRecord>& records,
                     const std::vector<Relation>& relations) {
    BimGraph graph;
    std::map<std::string, std::string> name_of; // object id -> node name
    for (const auto& r : records) {
        std::string cls = r.cls;
        std::transform(cls.begin(), cls.end(), cls.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        const std::string name = cls + "_" + r.id;
        if (!name_of.emplace(r.id, name).second)
            throw DataError("id-collision: duplicate object id '" + r.id + "'");
        if (graph.nodes.count(name))
            throw DataError("id-collision: duplicate node name '" + name + "'");
        graph.nodes[name] = {cls, r.attributes, r.id};
    }
    for (const auto& rel : relations) {
        auto s = name_of.find(rel.subject);
        auto o = name_of.find(rel.object);
        if (s == name_of.end())
            throw IntegrityError("referential-integrity: relation subject id '" + rel.subject +
                                 "' unknown");
        if (o == name_of.end())
            throw IntegrityError("referential-integrity: relation object id '" + rel.object +
                                 "' unknown");
        graph.edges.insert({s->second, rel.predicate, o->second});
    }
    validate_graph(graph);
    return graph;
}

std::optional<std::string> query_host(const BimGraph& graph, const std::string& node) {
    if (!graph.nodes.count(node)) throw DataError("lookup: unknown node '" + node + "'");
    std::optional<std::string> host;
    for (const auto& e : graph.edges) {
        if (e.subject == node && e.predicate == Predicate::hosted) {
            if (host)
                throw IntegrityError("multiplicity: node '" + node + "' has multiple hosts");
            host = e.object;
        }
    }
    return host;
}

std::vector<std::string> query_adjacent(const BimGraph& graph, const std::string& node) {
    if (!graph.nodes.count(node)) throw DataError("lookup: unknown node '" + node + "'");
    std::vector<std::string> out;
    for (const auto& e : graph.edges)
        if (e.subject == node && e.predicate == Predicate::adjacent_to) out.push_back(e.object);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bimsem
