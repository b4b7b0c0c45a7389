#include "bimsem/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bimsem/errors.hpp"
#include "bimsem/primitives.hpp"

namespace bimsem {

namespace {

using json = nlohmann::ordered_json;

double need(const GraphNode& node, const std::string& name, const std::string& node_name) {
    if (!node.attributes.has(name))
        throw DataError("attribute-missing: node '" + node_name + "' lacks '" + name + "'");
    return node.attributes.scalars.at(name);
}

Vec3 need_central(const GraphNode& node, const std::string& node_name) {
    if (!node.attributes.central_point)
        throw DataError("attribute-missing: node '" + node_name + "' lacks a central point");
    return *node.attributes.central_point;
}

char need_axis(const GraphNode& node, const std::string& node_name) {
    if (!node.attributes.axis)
        throw DataError("attribute-missing: node '" + node_name + "' lacks an axis");
    return *node.attributes.axis;
}

} // namespace

ReconstructionPlan plan_from_graph(const BimGraph& graph) {
    validate_graph(graph);
    ReconstructionPlan plan;

    // phase 1: walls (node map iteration is sorted by name)
    for (const auto& [name, node] : graph.nodes) {
        if (node.cls != "wall") continue;
        const double length = need(node, "length", name);
        const double thickness = need(node, "thickness", name);
        const double height = need(node, "height", name);
        const Vec3 c = need_central(node, name);
        const char axis = need_axis(node, name);
        CreateWall w;
        w.id = name;
        w.height = height;
        w.thickness = thickness;
        const double base = c.z - height / 2.0;
        if (axis == 'x') {
            w.start = {c.x - length / 2.0, c.y, base};
            w.end = {c.x + length / 2.0, c.y, base};
        } else {
            w.start = {c.x, c.y - length / 2.0, base};
            w.end = {c.x, c.y + length / 2.0, base};
        }
        plan.commands.push_back(w);
    }

    // phase 2: floors; footprint extents recovered from area + perimeter
    for (const auto& [name, node] : graph.nodes) {
        if (node.cls != "floor") continue;
        const double thickness = need(node, "thickness", name);
        const double area = need(node, "area", name);
        const double perimeter = need(node, "perimeter", name);
        const Vec3 c = need_central(node, name);
        const char axis = need_axis(node, name);
        const double half_sum = perimeter / 4.0; // (ex + ey) / 2
        const double disc = std::max(0.0, half_sum * half_sum - area);
        const double root = std::sqrt(disc);
        const double larger = half_sum + root, smaller = half_sum - root;
        CreateFloor f;
        f.id = name;
        f.thickness = thickness;
        f.size_x = axis == 'x' ? larger : smaller;
        f.size_y = axis == 'x' ? smaller : larger;
        f.min_corner = {c.x - f.size_x / 2.0, c.y - f.size_y / 2.0, c.z - thickness / 2.0};
        plan.commands.push_back(f);
    }

    // phase 3: hosted windows and doors
    for (const auto& [name, node] : graph.nodes) {
        if (node.cls != "window" && node.cls != "door") continue;
        const auto host = query_host(graph, name);
        if (!host)
            throw PlanError("node '" + name + "' is a " + node.cls + " without a hosted edge");
        PlaceHosted h;
        h.id = name;
        h.kind = node.cls;
        h.host = *host;
        h.center = need_central(node, name);
        h.width = need(node, "width", name);
        h.height = need(node, "height", name);
        h.depth = need(node, "depth", name);
        plan.commands.push_back(h);
    }
    return plan;
}

namespace {

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw FormatError("plan: malformed point");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

void save_plan(const ReconstructionPlan& plan, const std::string& path) {
    json arr = json::array();
    for (const auto& cmd : plan.commands) {
        json j;
        if (const auto* w = std::get_if<CreateWall>(&cmd)) {
            j["op"] = "create_wall";
            j["id"] = w->id;
            j["start"] = vec_json(w->start);
            j["end"] = vec_json(w->end);
            j["height"] = w->height;
            j["thickness"] = w->thickness;
        } else if (const auto* f = std::get_if<CreateFloor>(&cmd)) {
            j["op"] = "create_floor";
            j["id"] = f->id;
            j["min_corner"] = vec_json(f->min_corner);
            j["size_x"] = f->size_x;
            j["size_y"] = f->size_y;
            j["thickness"] = f->thickness;
        } else {
            const auto& h = std::get<PlaceHosted>(cmd);
            j["op"] = "place_hosted";
            j["id"] = h.id;
            j["kind"] = h.kind;
            j["host"] = h.host;
            j["center"] = vec_json(h.center);
            j["width"] = h.width;
            j["height"] = h.height;
            j["depth"] = h.depth;
        }
        arr.push_back(std::move(j));
    }
    json root;
    root["format"] = "bimsem-plan";
    root["version"] = 1;
    root["units"] = "m";
    root["commands"] = std::move(arr);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << root.dump(2) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

ReconstructionPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw FormatError(std::string("plan: invalid json: ") + e.what());
    }
    try {
        if (root.at("format").get<std::string>() != "bimsem-plan")
            throw FormatError("plan: unrecognized format tag");
        if (root.at("version").get<int>() != 1) throw FormatError("plan: unsupported version");
        if (root.at("units").get<std::string>() != "m")
            throw FormatError("plan: unsupported units");
        ReconstructionPlan plan;
        for (const auto& j : root.at("commands")) {
            const std::string op = j.at("op").get<std::string>();
            if (op == "create_wall") {
                CreateWall w;
                w.id = j.at("id").get<std::string>();
                w.start = vec_from(j.at("start"));
                w.end = vec_from(j.at("end"));
                w.height = j.at("height").get<double>();
                w.thickness = j.at("thickness").get<double>();
                plan.commands.push_back(w);
            } else if (op == "create_floor") {
                CreateFloor f;
                f.id = j.at("id").get<std::string>();
                f.min_corner = vec_from(j.at("min_corner"));
                f.size_x = j.at("size_x").get<double>();
                f.size_y = j.at("size_y").get<double>();
                f.thickness = j.at("thickness").get<double>();
                plan.commands.push_back(f);
            } else if (op == "place_hosted") {
                PlaceHosted h;
                h.id = j.at("id").get<std::string>();
                h.kind = j.at("kind").get<std::string>();
                h.host = j.at("host").get<std::string>();
                h.center = vec_from(j.at("center"));
                h.width = j.at("width").get<double>();
                h.height = j.at("height").get<double>();
                h.depth = j.at("depth").get<double>();
                plan.commands.push_back(h);
            } else {
                throw FormatError("plan: unknown op '" + op + "'");
            }
        }
        return plan;
    } catch (const json::exception& e) {
        throw FormatError(std::string("plan: missing or mistyped field: ") + e.what());
    }
}

std::vector<RealizedObject> realize(const ReconstructionPlan& plan) {
    struct WallShape {
        Aabb box;
        int run_axis = 0;
        std::vector<OpeningRect> openings;
        size_t order = 0;
    };
    std::map<std::string, WallShape> walls;
    std::vector<RealizedObject> out;

    // first pass: collect wall shapes and opening cuts
    size_t index = 0;
    bool seen_hosted = false;
    for (const auto& cmd : plan.commands) {
        if (const auto* w = std::get_if<CreateWall>(&cmd)) {
            if (seen_hosted)
                throw PlanError("plan order: wall '" + w->id + "' follows a hosted placement");
            const Vec3 dir = w->end - w->start;
            int run_axis;
            if (std::abs(dir.x) > 1e-9 && std::abs(dir.y) <= 1e-9) run_axis = 0;
            else if (std::abs(dir.y) > 1e-9 && std::abs(dir.x) <= 1e-9) run_axis = 1;
            else throw GeometryError("wall '" + w->id + "' centerline is not axis-aligned");
            if (std::abs(dir.z) > 1e-9)
                throw GeometryError("wall '" + w->id + "' centerline is not horizontal");
            if (w->height <= 0 || w->thickness <= 0)
                throw GeometryError("wall '" + w->id + "' has non-positive height or thickness");

            WallShape shape;
            shape.run_axis = run_axis;
            const int T = 1 - run_axis;
            Vec3 lo = w->start, hi = w->end;
            if (lo[run_axis] > hi[run_axis]) std::swap(lo, hi);
            shape.box.min[run_axis] = lo[run_axis];
            shape.box.max[run_axis] = hi[run_axis];
            shape.box.min[T] = lo[T] - w->thickness / 2.0;
            shape.box.max[T] = lo[T] + w->thickness / 2.0;
            shape.box.min.z = lo.z;
            shape.box.max.z = lo.z + w->height;
            shape.order = index;
            if (!walls.emplace(w->id, shape).second)
                throw PlanError("duplicate wall id '" + w->id + "'");
        } else if (std::get_if<PlaceHosted>(&cmd)) {
            seen_hosted = true;
        }
        ++index;
    }

    for (const auto& cmd : plan.commands) {
        if (const auto* h = std::get_if<PlaceHosted>(&cmd)) {
            auto it = walls.find(h->host);
            if (it == walls.end())
                throw PlanError("hosted object '" + h->id + "' references unknown wall '" +
                                h->host + "'");
            WallShape& wall = it->second;
            const int R = wall.run_axis;
            OpeningRect o;
            o.a0 = h->center[R] - h->width / 2.0;
            o.a1 = h->center[R] + h->width / 2.0;
            o.z0 = h->center.z - h->height / 2.0;
            o.z1 = h->center.z + h->height / 2.0;
            // snap door sills onto the wall base so the cut is flush
            if (std::abs(o.z0 - wall.box.min.z) <= 1e-6) o.z0 = wall.box.min.z;
            const int T = 1 - R;
            const double cross_lo = h->center[T] - h->depth / 2.0;
            const double cross_hi = h->center[T] + h->depth / 2.0;
            constexpr double tol = 1e-9;
            if (o.a0 <= wall.box.min[R] + tol || o.a1 >= wall.box.max[R] - tol ||
                o.z0 < wall.box.min.z || o.z1 >= wall.box.max.z - tol ||
                cross_lo < wall.box.min[T] - tol || cross_hi > wall.box.max[T] + tol)
                throw GeometryError("hosted object '" + h->id + "' does not fit inside wall '" +
                                    h->host + "'");
            wall.openings.push_back(o);
        }
    }

    // second pass: emit meshes in plan order
    for (const auto& cmd : plan.commands) {
        if (const auto* w = std::get_if<CreateWall>(&cmd)) {
            const WallShape& shape = walls.at(w->id);
            out.push_back({w->id, "wall",
                           make_wall_with_openings(shape.box, shape.run_axis, shape.openings)});
        } else if (const auto* f = std::get_if<CreateFloor>(&cmd)) {
            if (f->size_x <= 0 || f->size_y <= 0 || f->thickness <= 0)
                throw GeometryError("floor '" + f->id + "' has non-positive dimensions");
            Aabb box{f->min_corner,
                     f->min_corner + Vec3{f->size_x, f->size_y, f->thickness}};
            out.push_back({f->id, "floor", make_box(box)});
        } else {
            const auto& h = std::get<PlaceHosted>(cmd);
            if (h.kind != "window" && h.kind != "door")
                throw PlanError("hosted object '" + h.id + "' has unknown kind '" + h.kind + "'");
            const int R = walls.at(h.host).run_axis;
            const int T = 1 - R;
            Aabb box;
            box.min[R] = h.center[R] - h.width / 2.0;
            box.max[R] = h.center[R] + h.width / 2.0;
            box.min[T] = h.center[T] - h.depth / 2.0;
            box.max[T] = h.center[T] + h.depth / 2.0;
            box.min.z = h.center.z - h.height / 2.0;
            box.max.z = h.center.z + h.height / 2.0;
            out.push_back({h.id, h.kind, make_box(box)});
        }
    }
    return out;
}

ComparisonReport compare_scenes(const std::vector<RealizedObject>& original,
                                const std::vector<RealizedObject>& reconstructed, double tol) {
    ComparisonReport report;
    report.tolerance = tol;

    struct Shape {
        const RealizedObject* obj;
        Vec3 center, extent;
        bool used = false;
    };
    std::vector<Shape> recon;
    recon.reserve(reconstructed.size());
    for (const auto& r : reconstructed) {
        const Aabb box = aabb(r.mesh);
        recon.push_back({&r, box.center(), box.extent(), false});
    }

    for (const auto& o : original) {
        const Aabb box = aabb(o.mesh);
        const Vec3 center = box.center(), extent = box.extent();
        Shape* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (auto& s : recon) {
            if (s.used || s.obj->cls != o.cls) continue;
            const double d = distance(center, s.center);
            if (d < best_d) {
                best_d = d;
                best = &s;
            }
        }
        if (!best) {
            report.unmatched_original.push_back(o.id);
            continue;
        }
        best->used = true;
        ObjectMatch m;
        m.original_id = o.id;
        m.reconstructed_id = best->obj->id;
        m.cls = o.cls;
        m.center_delta = best_d;
        m.extent_delta = {std::abs(extent.x - best->extent.x), std::abs(extent.y - best->extent.y),
                          std::abs(extent.z - best->extent.z)};
        m.within_tolerance = best_d <= tol && m.extent_delta.x <= tol &&
                             m.extent_delta.y <= tol && m.extent_delta.z <= tol;
        report.matches.push_back(m);
    }
    for (const auto& s : recon)
        if (!s.used) report.unmatched_reconstructed.push_back(s.obj->id);

    report.pass = report.unmatched_original.empty() && report.unmatched_reconstructed.empty() &&
                  std::all_of(report.matches.begin(), report.matches.end(),
                              [](const ObjectMatch& m) { return m.within_tolerance; });
    return report;
}

std::string render_report(const ComparisonReport& report) {
    std::ostringstream out;
    char buf[160];
    for (const auto& m : report.matches) {
        std::snprintf(buf, sizeof(buf),
                      "%-6s %-12s -> %-12s center %.3g  extent (%.3g, %.3g, %.3g)  %s\n",
                      m.cls.c_str(), m.original_id.c_str(), m.reconstructed_id.c_str(),
                      m.center_delta, m.extent_delta.x, m.extent_delta.y, m.extent_delta.z,
                      m.within_tolerance ? "ok" : "OUT OF TOLERANCE");
        out << buf;
    }
    for (const auto& id : report.unmatched_original) out << "unmatched original: " << id << "\n";
    for (const auto& id : report.unmatched_reconstructed)
        out << "unmatched reconstructed: " << id << "\n";
    std::snprintf(buf, sizeof(buf), "%zu objects compared, tolerance %g m: %s\n",
                  report.matches.size(), report.tolerance, report.pass ? "PASS" : "FAIL");
    out << buf;
    return out.str();
}

std::string report_to_json(const ComparisonReport& report) {
    json j;
    j["pass"] = report.pass;
    j["tolerance_m"] = report.tolerance;
    json matches = json::array();
    for (const auto& m : report.matches) {
        matches.push_back(json{{"original", m.original_id},
                               {"reconstructed", m.reconstructed_id},
                               {"class", m.cls},
                               {"center_delta_m", m.center_delta},
                               {"extent_delta_m", json::array({m.extent_delta.x, m.extent_delta.y,
                                                               m.extent_delta.z})},
                               {"within_tolerance", m.within_tolerance}});
    }
    j["matches"] = std::move(matches);
    j["unmatched_original"] = report.unmatched_original;
    j["unmatched_reconstructed"] = report.unmatched_reconstructed;
    return j.dump(2) + "\n";
}

} // namespace bimsem
