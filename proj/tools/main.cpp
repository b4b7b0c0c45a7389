#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bimsem/errors.hpp"
#include "bimsem/evaluation.hpp"
#include "bimsem/features.hpp"
#include "bimsem/pipeline.hpp"
#include "bimsem/ply.hpp"
#include "bimsem/turtle.hpp"

namespace fs = std::filesystem;
using namespace bimsem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitComparison = 3;

// Meshes of every .ply in a directory, keyed by filename stem, sorted.
std::vector<std::pair<std::string, Mesh>> load_ply_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: '" + dir + "'");
    std::vector<std::pair<std::string, Mesh>> out;
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".ply")
            paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) out.push_back({p.stem().string(), load_ply(p.string())});
    if (out.empty()) throw DataError("empty-input: no .ply files in '" + dir + "'");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

LabeledDataset labeled_from_rows(const std::vector<FeatureRow>& rows) {
    LabeledDataset data;
    for (const auto& row : rows) {
        if (!row.label) throw DataError("row '" + row.id + "' has no label");
        data.add(row.features, *row.label);
    }
    return data;
}

struct CommonOpts {
    std::string in, out, model;
    uint64_t seed = 0;
    int scenes = 1;
    double tol = 1e-3;
    RelationConfig rel;
};

void add_relation_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--eps-gap", o.rel.eps_gap, "stage-1 AABB gap tolerance (m)");
    cmd->add_option("--eps-contact", o.rel.eps_contact, "stage-2 contact distance tolerance (m)");
    cmd->add_option("--eps-contain", o.rel.eps_contain, "stage-3 containment slack (m)");
}

int cmd_gen(const CommonOpts& o) {
    SceneSpec spec;
    spec.seed = o.seed;
    const auto summary = generate_corpus(spec, o.scenes, o.out);
    std::cout << "corpus: " << summary.scene_count << " scenes, " << summary.object_count
              << " objects\n"
              << "manifest: " << summary.manifest_path << "\n"
              << "features: " << summary.features_csv_path << "\n";
    return kExitOk;
}

int cmd_features(const CommonOpts& o) {
    const auto meshes = load_ply_dir(o.in);
    std::vector<FeatureRow> rows;
    for (const auto& [id, mesh] : meshes) rows.push_back({id, std::nullopt, extract_features(mesh)});
    features_to_csv(rows, o.out);
    std::cout << rows.size() << " feature rows -> " << o.out << "\n";
    return kExitOk;
}

int cmd_train(const CommonOpts& o) {
    const auto rows = features_from_csv(o.in);
    const LabeledDataset data = labeled_from_rows(rows);
    SplitSpec split_spec;
    split_spec.seed = o.seed;
    const DatasetSplit parts = split(data, split_spec);

    const TreeModel tree = train_tree(parts.train);
    ForestParams fp;
    fp.seed = o.seed;
    const ForestModel forest = train_forest(parts.train, fp);
    const KnnModel knn = train_knn(parts.train);

    std::vector<AccuracyRow> table;
    table.push_back({"decision_tree", evaluate(tree, parts.valid).accuracy,
                     evaluate(tree, parts.test).accuracy});
    table.push_back({"random_forest", evaluate(forest, parts.valid).accuracy,
                     evaluate(forest, parts.test).accuracy});
    table.push_back({"knn", evaluate(knn, parts.valid).accuracy,
                     evaluate(knn, parts.test).accuracy});
    std::cout << render_accuracy_table(table);

    if (!o.out.empty()) {
        save_model(forest, o.out);
        std::cout << "model (random_forest) -> " << o.out << "\n";
    }
    return kExitOk;
}

int cmd_classify(const CommonOpts& o) {
    const AnyModel model = load_model(o.model);
    const auto meshes = load_ply_dir(o.in);
    std::ostringstream csv;
    csv << "id,class,confidence\n";
    for (const auto& [id, mesh] : meshes) {
        const Prediction p = predict(model, extract_features(mesh));
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", p.confidence);
        csv << id << ',' << p.label << ',' << buf << '\n';
    }
    write_text(o.out, csv.str());
    std::cout << meshes.size() << " objects classified -> " << o.out << "\n";
    return kExitOk;
}

int cmd_relate(const CommonOpts& o) {
    const auto meshes = load_ply_dir(o.in);
    std::vector<ObjectRecord> records;
    for (const auto& [id, mesh] : meshes) {
        ObjectRecord r;
        r.id = id;
        r.mesh = mesh;
        records.push_back(std::move(r));
    }
    std::vector<std::string> diagnostics;
    const auto relations = infer_all(records, o.rel, &diagnostics);
    std::ostringstream csv;
    csv << "subject,predicate,object\n";
    for (const auto& r : relations)
        csv << r.subject << ',' << to_string(r.predicate) << ',' << r.object << '\n';
    write_text(o.out, csv.str());
    for (const auto& d : diagnostics) std::cerr << "warning: " << d << "\n";
    std::cout << relations.size() << " relations -> " << o.out << "\n";
    return kExitOk;
}

int cmd_enrich(const CommonOpts& o) {
    const AnyModel model = load_model(o.model);
    const auto meshes = load_ply_dir(o.in);
    const EnrichResult result = enrich(meshes, model, o.rel);
    write_text(o.out, serialize_turtle(result.graph));
    for (const auto& d : result.diagnostics) std::cerr << "warning: " << d << "\n";
    std::cout << result.graph.nodes.size() << " nodes, " << result.graph.edges.size()
              << " edges -> " << o.out << "\n";
    return kExitOk;
}

int cmd_reconstruct(const CommonOpts& o) {
    std::ifstream in(o.in);
    if (!in) throw IoError("cannot open '" + o.in + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const BimGraph graph = parse_turtle(buf.str());
    const ReconstructionPlan plan = plan_from_graph(graph);

    fs::create_directories(o.out);
    save_plan(plan, (fs::path(o.out) / "plan.json").string());
    const auto objects = realize(plan);
    for (const auto& obj : objects)
        write_ply(obj.mesh, (fs::path(o.out) / (obj.id + ".ply")).string());
    std::cout << objects.size() << " objects reconstructed -> " << o.out << "\n";
    return kExitOk;
}

int cmd_roundtrip(const CommonOpts& o) {
    const ForestModel model = train_default_model(o.seed ^ 0x5eedULL);
    SceneSpec spec;
    spec.seed = o.seed;
    const auto scenes = generate_scenes(spec, o.scenes);

    bool all_pass = true;
    for (const auto& scene : scenes) {
        const RoundtripResult rt = roundtrip_scene(scene, model, o.rel, o.tol);
        std::cout << scene.name << ":\n" << render_report(rt.report);
        if (!o.out.empty()) {
            fs::create_directories(o.out);
            write_text((fs::path(o.out) / (scene.name + ".ttl")).string(), rt.turtle);
            save_plan(rt.plan, (fs::path(o.out) / (scene.name + "_plan.json")).string());
            write_text((fs::path(o.out) / (scene.name + "_report.json")).string(),
                       report_to_json(rt.report));
        }
        all_pass = all_pass && rt.report.pass;
    }
    std::cout << (all_pass ? "roundtrip PASS" : "roundtrip FAIL") << " (" << scenes.size()
              << " scenes)\n";
    return all_pass ? kExitOk : kExitComparison;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BIM semantic-enrichment pipeline: geometry in, knowledge graph out"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* gen = app.add_subcommand("gen", "generate a synthetic labeled corpus");
    gen->add_option("--out", o.out, "output directory")->required();
    gen->add_option("--seed", o.seed, "rng seed");
    gen->add_option("--scenes", o.scenes, "number of scenes")->check(CLI::PositiveNumber);

    auto* features = app.add_subcommand("features", "extract feature vectors from PLY files");
    features->add_option("--in", o.in, "directory of .ply files")->required();
    features->add_option("--out", o.out, "output CSV path")->required();

    auto* train = app.add_subcommand("train", "train classifiers on a labeled feature CSV");
    train->add_option("--in", o.in, "labeled feature CSV")->required();
    train->add_option("--out", o.out, "model file to write (random forest)");
    train->add_option("--seed", o.seed, "split/forest seed");

    auto* classify = app.add_subcommand("classify", "classify PLY objects with a trained model");
    classify->add_option("--in", o.in, "directory of .ply files")->required();
    classify->add_option("--model", o.model, "model file")->required();
    classify->add_option("--out", o.out, "output CSV path")->required();

    auto* relate = app.add_subcommand("relate", "infer spatial relations between PLY objects");
    relate->add_option("--in", o.in, "directory of .ply files")->required();
    relate->add_option("--out", o.out, "output CSV path")->required();
    add_relation_flags(relate, o);

    auto* enrich_cmd = app.add_subcommand("enrich", "classify, relate and attribute PLY objects "
                                                    "into a Turtle graph");
    enrich_cmd->add_option("--in", o.in, "directory of .ply files")->required();
    enrich_cmd->add_option("--model", o.model, "model file")->required();
    enrich_cmd->add_option("--out", o.out, "output .ttl path")->required();
    add_relation_flags(enrich_cmd, o);

    auto* reconstruct = app.add_subcommand("reconstruct", "rebuild meshes from a Turtle graph");
    reconstruct->add_option("--in", o.in, "input .ttl path")->required();
    reconstruct->add_option("--out", o.out, "output directory")->required();

    auto* roundtrip = app.add_subcommand("roundtrip", "generate scenes, enrich, reconstruct "
                                                      "and compare");
    roundtrip->add_option("--seed", o.seed, "rng seed");
    roundtrip->add_option("--scenes", o.scenes, "number of scenes")->check(CLI::PositiveNumber);
    roundtrip->add_option("--tol", o.tol, "comparison tolerance (m)");
    roundtrip->add_option("--out", o.out, "optional directory for graphs/plans/reports");
    add_relation_flags(roundtrip, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(o);
        if (features->parsed()) return cmd_features(o);
        if (train->parsed()) return cmd_train(o);
        if (classify->parsed()) return cmd_classify(o);
        if (relate->parsed()) return cmd_relate(o);
        if (enrich_cmd->parsed()) return cmd_enrich(o);
        if (reconstruct->parsed()) return cmd_reconstruct(o);
        if (roundtrip->parsed()) return cmd_roundtrip(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
