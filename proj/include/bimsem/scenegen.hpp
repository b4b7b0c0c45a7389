#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bimsem/object_record.hpp"
#include "bimsem/relations.hpp"

namespace bimsem {

// Generation parameters for synthetic apartment scenes. Each scene is an
// orthogonal room grid: full-span walls along the horizontal grid lines,
// wall segments between them along the vertical lines, one floor slab,
// and window/door boxes fitted into openings cut through their host
// walls. All ranges are drawn per scene from the spec's seed.
struct SceneSpec {
    uint64_t seed = 0;
    int rooms_x = 3, rooms_y = 3; // rooms per axis drawn in [1, rooms_*]
    double room_w_min = 3.0, room_w_max = 5.5;
    double room_d_min = 3.0, room_d_max = 5.5;
    double wall_thickness_min = 0.15, wall_thickness_max = 0.3;
    double wall_height_min = 2.6, wall_height_max = 3.2;
    double floor_thickness_min = 0.2, floor_thickness_max = 0.35;
    int openings_per_wall_min = 0, openings_per_wall_max = 2;
    double window_width_min = 0.8, window_width_max = 1.6;
    double window_height_min = 0.9, window_height_max = 1.5;
    double sill_min = 0.8, sill_max = 1.1;
    double door_width_min = 0.8, door_width_max = 1.1;
    double door_height_min = 2.0, door_height_max = 2.2;
    double opening_margin = 0.2; // clearance from wall ends, top and other openings
    double offset_xy = 20.0;     // scene translated by U[-offset_xy, offset_xy]^2
    double offset_z = 6.0;       // and U[0, offset_z] vertically
};

struct SceneObject {
    std::string id;
    std::string cls;
    Mesh mesh;
};

struct GroundTruthObject {
    std::string id;
    std::string cls;
    AttributeMap attributes; // computed from construction parameters
};

// Analytic ground truth, derived from the construction parameters and
// never from the inference modules.
struct GroundTruth {
    std::vector<GroundTruthObject> objects;
    std::vector<Relation> relations; // sorted (subject, predicate, object)
};

struct Scene {
    std::string name;
    std::vector<SceneObject> objects;
    GroundTruth truth;
};

// Deterministic: the same spec yields byte-identical meshes and truth.
// Throws SpecError when the spec is infeasible (e.g. every opening wider
// than any wall span).
Scene generate_scene(const SceneSpec& spec);

// n scenes with per-scene seeds derived from spec.seed.
std::vector<Scene> generate_scenes(const SceneSpec& spec, int n);

// Write a corpus: per-scene PLY directories, a JSON manifest with
// classes, attributes and relations, and a labeled feature CSV.
struct CorpusSummary {
    std::string manifest_path;
    std::string features_csv_path;
    int scene_count = 0;
    int object_count = 0;
};
CorpusSummary generate_corpus(const SceneSpec& spec, int n_scenes, const std::string& out_dir);

} // namespace bimsem
