#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bimsem/classifier.hpp"
#include "bimsem/graph.hpp"
#include "bimsem/reconstruct.hpp"
#include "bimsem/scenegen.hpp"

namespace bimsem {

struct EnrichResult {
    std::vector<ObjectRecord> records;
    std::vector<Relation> relations;
    BimGraph graph;
    std::vector<std::string> diagnostics;
};

// classify -> relate -> attributes -> graph, in sequence.
EnrichResult enrich(const std::vector<std::pair<std::string, Mesh>>& objects,
                    const AnyModel& model, const RelationConfig& cfg);

struct RoundtripResult {
    ComparisonReport report;
    std::string turtle;
    ReconstructionPlan plan;
};

// Full chain over one scene: enrich the bare meshes, serialize and
// re-parse the graph, derive and realize the plan, compare against the
// original objects.
RoundtripResult roundtrip_scene(const Scene& scene, const AnyModel& model,
                                const RelationConfig& cfg, double tol);

// Train the default random forest on a generated corpus; used by the CLI
// roundtrip command and the acceptance suite.
ForestModel train_default_model(uint64_t seed, int n_scenes = 40);

} // namespace bimsem
