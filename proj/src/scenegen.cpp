#include "bimsem/scenegen.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "bimsem/errors.hpp"
#include "bimsem/features.hpp"
#include "bimsem/ply.hpp"
#include "bimsem/primitives.hpp"
#include "bimsem/rng.hpp"

namespace bimsem {

namespace {

using json = nlohmann::ordered_json;

void check_range(double lo, double hi, const char* what) {
    if (!(lo > 0.0) || !(hi >= lo))
        throw SpecError(std::string("spec: bad range for ") + what);
}

void validate_spec(const SceneSpec& spec) {
    if (spec.rooms_x < 1 || spec.rooms_y < 1) throw SpecError("spec: rooms must be >= 1");
    check_range(spec.room_w_min, spec.room_w_max, "room width");
    check_range(spec.room_d_min, spec.room_d_max, "room depth");
    check_range(spec.wall_thickness_min, spec.wall_thickness_max, "wall thickness");
    check_range(spec.wall_height_min, spec.wall_height_max, "wall height");
    check_range(spec.floor_thickness_min, spec.floor_thickness_max, "floor thickness");
    check_range(spec.window_width_min, spec.window_width_max, "window width");
    check_range(spec.window_height_min, spec.window_height_max, "window height");
    check_range(spec.sill_min, spec.sill_max, "sill height");
    check_range(spec.door_width_min, spec.door_width_max, "door width");
    check_range(spec.door_height_min, spec.door_height_max, "door height");
    if (spec.opening_margin < 0.0) throw SpecError("spec: negative opening margin");
    if (spec.openings_per_wall_min < 0 ||
        spec.openings_per_wall_max < spec.openings_per_wall_min)
        throw SpecError("spec: bad openings-per-wall range");
    if (spec.door_height_max + spec.opening_margin > spec.wall_height_min)
        throw SpecError("spec: doors cannot fit under the lowest wall height");
    if (spec.sill_min + spec.window_height_min + spec.opening_margin > spec.wall_height_min)
        throw SpecError("spec: windows cannot fit under the lowest wall height");
    // wall bands on opposite sides of a room must not collide
    if (2.0 * spec.wall_thickness_max >= std::min(spec.room_w_min, spec.room_d_min))
        throw SpecError("spec: wall thickness too large for the smallest room");
}

struct Interval {
    double lo, hi;
    double length() const { return hi - lo; }
};

struct WallDraft {
    std::string id;
    Aabb box;                        // local coordinates
    int run_axis = 0;                // 0: along x, 1: along y
    std::vector<Interval> intervals; // eligible opening spans (margins applied)
    std::vector<OpeningRect> openings;
    double opening_volume = 0.0; // cut volume, for the analytic ground truth
};

struct OpeningDraft {
    std::string id;
    std::string cls; // window or door
    size_t wall_index;
    OpeningRect rect;
    double depth;
};

// Free sub-intervals of `iv` after removing placed openings plus margin.
std::vector<Interval> free_slots(const Interval& iv, const std::vector<OpeningRect>& placed,
                                 double margin) {
    std::vector<Interval> slots{iv};
    for (const auto& o : placed) {
        std::vector<Interval> next;
        for (const auto& s : slots) {
            const double lo = o.a0 - margin, hi = o.a1 + margin;
            if (hi <= s.lo || lo >= s.hi) {
                next.push_back(s);
                continue;
            }
            if (lo > s.lo) next.push_back({s.lo, lo});
            if (hi < s.hi) next.push_back({hi, s.hi});
        }
        slots = std::move(next);
    }
    return slots;
}

struct Placement {
    bool ok = false;
    double a0 = 0.0, a1 = 0.0;
};

Placement place_opening(Rng& rng, const WallDraft& wall, double width, double margin) {
    std::vector<Interval> fits;
    for (const auto& iv : wall.intervals)
        for (const auto& s : free_slots(iv, wall.openings, margin))
            if (s.length() >= width) fits.push_back(s);
    if (fits.empty()) return {};
    const Interval& s = fits[rng.bounded(fits.size())];
    const double a0 = rng.uniform(s.lo, s.hi - width);
    return {true, a0, a0 + width};
}

json attributes_json(const AttributeMap& attrs) {
    json j;
    json scalars;
    for (const auto& [k, v] : attrs.scalars) scalars[k] = v;
    j["scalars"] = std::move(scalars);
    if (attrs.central_point)
        j["central_point"] =
            json::array({attrs.central_point->x, attrs.central_point->y, attrs.central_point->z});
    if (attrs.axis) j["axis"] = std::string(1, *attrs.axis);
    return j;
}

} // namespace

Scene generate_scene(const SceneSpec& spec) {
    validate_spec(spec);
    Rng rng(spec.seed);

    const int nx = rng.uniform_int(1, spec.rooms_x);
    const int ny = rng.uniform_int(1, spec.rooms_y);
    const double t = rng.uniform(spec.wall_thickness_min, spec.wall_thickness_max);
    const double h = rng.uniform(spec.wall_height_min, spec.wall_height_max);
    const double tf = rng.uniform(spec.floor_thickness_min, spec.floor_thickness_max);

    std::vector<double> xs{0.0}, ys{0.0};
    for (int i = 0; i < nx; ++i) xs.push_back(xs.back() + rng.uniform(spec.room_w_min, spec.room_w_max));
    for (int j = 0; j < ny; ++j) ys.push_back(ys.back() + rng.uniform(spec.room_d_min, spec.room_d_max));
    const double Lx = xs.back(), Ly = ys.back();

    auto band = [&](const std::vector<double>& grid, int i, double total) -> Interval {
        if (i == 0) return {0.0, t};
        if (i == static_cast<int>(grid.size()) - 1) return {total - t, total};
        return {grid[static_cast<size_t>(i)] - t / 2.0, grid[static_cast<size_t>(i)] + t / 2.0};
    };

    const double margin = spec.opening_margin;
    std::vector<WallDraft> walls;
    int next_id = 1;
    auto take_id = [&]() { return std::to_string(next_id++); };

    // full-span walls along each horizontal grid line
    for (int j = 0; j <= ny; ++j) {
        const Interval yb = band(ys, j, Ly);
        WallDraft w;
        w.id = take_id();
        w.box = {{0.0, yb.lo, 0.0}, {Lx, yb.hi, h}};
        w.run_axis = 0;
        for (int i = 0; i < nx; ++i) {
            const Interval a = band(xs, i, Lx), b = band(xs, i + 1, Lx);
            if (b.lo - a.hi > 2.0 * margin) w.intervals.push_back({a.hi + margin, b.lo - margin});
        }
        walls.push_back(std::move(w));
    }
    // wall segments between horizontal lines along each vertical grid line
    for (int i = 0; i <= nx; ++i) {
        const Interval xb = band(xs, i, Lx);
        for (int k = 0; k < ny; ++k) {
            const Interval ya = band(ys, k, Ly), yb = band(ys, k + 1, Ly);
            WallDraft w;
            w.id = take_id();
            w.box = {{xb.lo, ya.hi, 0.0}, {xb.hi, yb.lo, h}};
            w.run_axis = 1;
            if (yb.lo - ya.hi > 2.0 * margin)
                w.intervals.push_back({ya.hi + margin, yb.lo - margin});
            walls.push_back(std::move(w));
        }
    }

    const std::string floor_id = take_id();

    double max_span = 0.0;
    for (const auto& w : walls)
        for (const auto& iv : w.intervals) max_span = std::max(max_span, iv.length());

    // openings
    std::vector<OpeningDraft> openings;
    bool have_door = false;
    auto try_place = [&](size_t wall_index, bool is_door) -> bool {
        WallDraft& wall = walls[wall_index];
        const double wall_h = wall.box.max.z - wall.box.min.z;
        double width, z0, z1;
        if (is_door) {
            width = rng.uniform(spec.door_width_min, spec.door_width_max);
            z0 = 0.0;
            z1 = rng.uniform(spec.door_height_min, spec.door_height_max);
        } else {
            width = rng.uniform(spec.window_width_min, spec.window_width_max);
            const double sill = rng.uniform(spec.sill_min, spec.sill_max);
            double wh = rng.uniform(spec.window_height_min, spec.window_height_max);
            wh = std::min(wh, wall_h - margin - sill);
            if (wh < spec.window_height_min) return false;
            z0 = sill;
            z1 = sill + wh;
        }
        Placement p = place_opening(rng, wall, width, margin);
        if (!p.ok && width > (is_door ? spec.door_width_min : spec.window_width_min)) {
            width = is_door ? spec.door_width_min : spec.window_width_min;
            p = place_opening(rng, wall, width, margin);
        }
        if (!p.ok) {
            if (!is_door && spec.window_width_min > max_span)
                throw SpecError("spec: window wider than any wall span");
            return false;
        }
        const double depth = t * rng.uniform(0.55, 0.8);
        OpeningDraft o;
        o.id = take_id();
        o.cls = is_door ? "door" : "window";
        o.wall_index = wall_index;
        o.rect = {p.a0, p.a1, z0, z1};
        o.depth = depth;
        openings.push_back(o);
        wall.openings.push_back(o.rect);
        wall.opening_volume += (p.a1 - p.a0) * (z1 - z0) * t;
        have_door |= is_door;
        return true;
    };

    for (size_t wi = 0; wi < walls.size(); ++wi) {
        const int n = rng.uniform_int(spec.openings_per_wall_min, spec.openings_per_wall_max);
        for (int k = 0; k < n; ++k) try_place(wi, rng.chance(0.3));
    }
    if (!have_door) {
        for (size_t wi = 0; wi < walls.size() && !have_door; ++wi) try_place(wi, true);
        if (!have_door) {
            if (spec.door_width_min > max_span)
                throw SpecError("spec: door wider than any wall span");
            throw SpecError("spec: could not place the mandatory door");
        }
    }

    const Vec3 offset{rng.uniform(-spec.offset_xy, spec.offset_xy),
                      rng.uniform(-spec.offset_xy, spec.offset_xy),
                      rng.uniform(0.0, spec.offset_z)};

    Scene scene;
    auto emit = [&](const std::string& id, const std::string& cls, Mesh mesh,
                    AttributeMap attrs) {
        scene.objects.push_back({id, cls, translated(mesh, offset)});
        if (attrs.central_point) *attrs.central_point += offset;
        scene.truth.objects.push_back({id, cls, std::move(attrs)});
    };

    for (const auto& w : walls) {
        const Vec3 ext = w.box.extent();
        const double length = w.run_axis == 0 ? ext.x : ext.y;
        AttributeMap attrs;
        attrs.axis = w.run_axis == 0 ? 'x' : 'y';
        attrs.central_point = w.box.center();
        attrs.scalars["height"] = h;
        attrs.scalars["length"] = length;
        attrs.scalars["thickness"] = t;
        attrs.scalars["area"] = length * h;
        attrs.scalars["volume"] = length * t * h - w.opening_volume;
        emit(w.id, "wall", make_wall_with_openings(w.box, w.run_axis, w.openings), attrs);
    }
    {
        Aabb slab{{0.0, 0.0, -tf}, {Lx, Ly, 0.0}};
        AttributeMap attrs;
        attrs.axis = Lx >= Ly ? 'x' : 'y';
        attrs.central_point = slab.center();
        attrs.scalars["thickness"] = tf;
        attrs.scalars["area"] = Lx * Ly;
        attrs.scalars["perimeter"] = 2.0 * (Lx + Ly);
        attrs.scalars["slope"] = 0.0;
        attrs.scalars["volume"] = Lx * Ly * tf;
        emit(floor_id, "floor", make_box(slab), attrs);
    }
    for (const auto& o : openings) {
        const WallDraft& wall = walls[o.wall_index];
        const int R = wall.run_axis, T = 1 - R;
        const double tc = 0.5 * (wall.box.min[T] + wall.box.max[T]);
        Aabb box;
        box.min[R] = o.rect.a0;
        box.max[R] = o.rect.a1;
        box.min[T] = tc - o.depth / 2.0;
        box.max[T] = tc + o.depth / 2.0;
        box.min.z = o.rect.z0;
        box.max.z = o.rect.z1;
        AttributeMap attrs;
        attrs.axis = R == 0 ? 'x' : 'y';
        attrs.central_point = box.center();
        attrs.scalars["width"] = o.rect.a1 - o.rect.a0;
        attrs.scalars["depth"] = o.depth;
        attrs.scalars["height"] = o.rect.z1 - o.rect.z0;
        emit(o.id, o.cls, make_box(box), attrs);
    }

    // ground-truth relations, straight from the construction:
    auto& rels = scene.truth.relations;
    auto adjacent = [&](const std::string& a, const std::string& b) {
        rels.push_back({a, Predicate::adjacent_to, b});
        rels.push_back({b, Predicate::adjacent_to, a});
    };
    // every wall rests on the floor slab
    for (const auto& w : walls) adjacent(w.id, floor_id);
    // each vertical segment touches the two horizontal walls it spans between
    for (int i = 0; i <= nx; ++i) {
        for (int k = 0; k < ny; ++k) {
            const size_t v_index = static_cast<size_t>(ny + 1) +
                                   static_cast<size_t>(i) * static_cast<size_t>(ny) +
                                   static_cast<size_t>(k);
            adjacent(walls[v_index].id, walls[static_cast<size_t>(k)].id);
            adjacent(walls[v_index].id, walls[static_cast<size_t>(k) + 1].id);
        }
    }
    // openings are hosted by their wall; doors also touch the floor
    for (const auto& o : openings) {
        rels.push_back({walls[o.wall_index].id, Predicate::hosting, o.id});
        rels.push_back({o.id, Predicate::hosted, walls[o.wall_index].id});
        if (o.cls == "door") adjacent(o.id, floor_id);
    }
    std::sort(rels.begin(), rels.end());
    return scene;
}

std::vector<Scene> generate_scenes(const SceneSpec& spec, int n) {
    if (n < 1) throw SpecError("spec: scene count must be >= 1");
    Rng root(spec.seed);
    std::vector<uint64_t> seeds(static_cast<size_t>(n));
    for (auto& s : seeds) s = root.next_u64();

    std::vector<Scene> scenes;
    scenes.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        SceneSpec s = spec;
        s.seed = seeds[static_cast<size_t>(i)];
        Scene scene = generate_scene(s);
        char name[32];
        std::snprintf(name, sizeof(name), "scene_%03d", i);
        scene.name = name;
        scenes.push_back(std::move(scene));
    }
    return scenes;
}

CorpusSummary generate_corpus(const SceneSpec& spec, int n_scenes, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create directory '" + out_dir + "'");

    const auto scenes = generate_scenes(spec, n_scenes);

    json manifest;
    manifest["format"] = "bimsem-corpus";
    manifest["version"] = 1;
    json scene_arr = json::array();

    std::vector<FeatureRow> feature_rows;
    int object_count = 0;

    for (const auto& scene : scenes) {
        const fs::path scene_dir = fs::path(out_dir) / scene.name;
        fs::create_directories(scene_dir, ec);
        if (ec) throw IoError("cannot create directory '" + scene_dir.string() + "'");

        json objects = json::array();
        for (size_t i = 0; i < scene.objects.size(); ++i) {
            const auto& obj = scene.objects[i];
            write_ply(obj.mesh, (scene_dir / (obj.id + ".ply")).string());
            json o;
            o["id"] = obj.id;
            o["class"] = obj.cls;
            o["attributes"] = attributes_json(scene.truth.objects[i].attributes);
            objects.push_back(std::move(o));

            FeatureRow row;
            row.id = scene.name + "/" + obj.id;
            row.label = obj.cls;
            row.features = extract_features(obj.mesh);
            feature_rows.push_back(std::move(row));
            ++object_count;
        }
        json relations = json::array();
        for (const auto& r : scene.truth.relations)
            relations.push_back(json::array({r.subject, to_string(r.predicate), r.object}));

        json s;
        s["name"] = scene.name;
        s["objects"] = std::move(objects);
        s["relations"] = std::move(relations);
        scene_arr.push_back(std::move(s));
    }
    manifest["scenes"] = std::move(scene_arr);

    CorpusSummary summary;
    summary.manifest_path = (fs::path(out_dir) / "manifest.json").string();
    summary.features_csv_path = (fs::path(out_dir) / "features.csv").string();
    summary.scene_count = n_scenes;
    summary.object_count = object_count;

    std::ofstream mf(summary.manifest_path);
    if (!mf) throw IoError("cannot write '" + summary.manifest_path + "'");
    mf << manifest.dump(2) << "\n";
    features_to_csv(feature_rows, summary.features_csv_path);
    return summary;
}

} // namespace bimsem
