#include "bimsem/pipeline.hpp"

#include "bimsem/errors.hpp"
#include "bimsem/features.hpp"
#include "bimsem/turtle.hpp"

namespace bimsem {

EnrichResult enrich(const std::vector<std::pair<std::string, Mesh>>& objects,
                    const AnyModel& model, const RelationConfig& cfg) {
    if (objects.empty()) throw DataError("empty-input: no objects to enrich");

    EnrichResult result;
    for (const auto& [id, mesh] : objects) {
        ObjectRecord record;
        record.id = id;
        record.mesh = mesh;
        const Prediction p = predict(model, extract_features(mesh));
        record.cls = p.label;
        record.confidence = p.confidence;
        record.attributes = compute_attributes(mesh, p.label);
        result.records.push_back(std::move(record));
    }
    result.relations = infer_all(result.records, cfg, &result.diagnostics);
    result.graph = build_graph(result.records, result.relations);
    return result;
}

RoundtripResult roundtrip_scene(const Scene& scene, const AnyModel& model,
                                const RelationConfig& cfg, double tol) {
    std::vector<std::pair<std::string, Mesh>> inputs;
    inputs.reserve(scene.objects.size());
    for (const auto& obj : scene.objects) inputs.push_back({obj.id, obj.mesh});

    EnrichResult enriched = enrich(inputs, model, cfg);

    RoundtripResult result;
    result.turtle = serialize_turtle(enriched.graph);
    const BimGraph reloaded = parse_turtle(result.turtle);
    result.plan = plan_from_graph(reloaded);
    const auto rebuilt = realize(result.plan);

    std::vector<RealizedObject> original;
    original.reserve(scene.objects.size());
    for (const auto& obj : scene.objects) original.push_back({obj.id, obj.cls, obj.mesh});
    result.report = compare_scenes(original, rebuilt, tol);
    return result;
}

ForestModel train_default_model(uint64_t seed, int n_scenes) {
    SceneSpec spec;
    spec.seed = seed;
    const auto scenes = generate_scenes(spec, n_scenes);
    LabeledDataset data;
    for (const auto& scene : scenes)
        for (const auto& obj : scene.objects) data.add(extract_features(obj.mesh), obj.cls);
    ForestParams params;
    params.seed = seed;
    return train_forest(data, params);
}

} // namespace bimsem
