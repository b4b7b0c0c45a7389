#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bimsem/graph.hpp"

namespace bimsem {

// Creation commands, ordered so that every PlaceHosted refers to an
// earlier CreateWall and all walls/floors precede hosted placements.

struct CreateWall {
    std::string id;
    Vec3 start, end; // centerline at mid-thickness, base elevation
    double height = 0.0;
    double thickness = 0.0;
};

struct CreateFloor {
    std::string id;
    Vec3 min_corner; // bottom south-west corner of the slab
    double size_x = 0.0, size_y = 0.0;
    double thickness = 0.0;
};

struct PlaceHosted {
    std::string id;
    std::string kind; // window or door
    std::string host; // CreateWall id
    Vec3 center;
    double width = 0.0, height = 0.0, depth = 0.0;
};

using PlanCommand = std::variant<CreateWall, CreateFloor, PlaceHosted>;

struct ReconstructionPlan {
    std::vector<PlanCommand> commands;
};

// Derive the ordered plan from a graph: walls first (centerline along the
// stored axis at mid-thickness, base at min z), then floors, then hosted
// objects at their central points. Deterministic: commands sorted by node
// name within each phase.
ReconstructionPlan plan_from_graph(const BimGraph& graph);

// Versioned JSON plan file, explicit units field ("m").
void save_plan(const ReconstructionPlan& plan, const std::string& path);
ReconstructionPlan load_plan(const std::string& path);

struct RealizedObject {
    std::string id;
    std::string cls;
    Mesh mesh;
};

// Realize the plan as solid meshes: walls and floors as axis-aligned
// boxes, one rectangular opening cut through the host wall per hosted
// object, hosted objects as boxes at their central points.
std::vector<RealizedObject> realize(const ReconstructionPlan& plan);

struct ObjectMatch {
    std::string original_id, reconstructed_id;
    std::string cls;
    double center_delta = 0.0;   // Euclidean, m
    Vec3 extent_delta;           // per-axis absolute difference, m
    bool within_tolerance = false;
};

struct ComparisonReport {
    std::vector<ObjectMatch> matches;
    std::vector<std::string> unmatched_original;
    std::vector<std::string> unmatched_reconstructed;
    double tolerance = 0.0;
    bool pass = false;
};

// Greedy matching by (class, nearest AABB center). A match requires class
// equality, center delta <= tol and per-axis extent delta <= tol; ids are
// not required to agree.
ComparisonReport compare_scenes(const std::vector<RealizedObject>& original,
                                const std::vector<RealizedObject>& reconstructed, double tol);

std::string render_report(const ComparisonReport& report);
std::string report_to_json(const ComparisonReport& report);

} // namespace bimsem
