#include "bimsem/features.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bimsem/errors.hpp"

namespace bimsem {

FeatureVector extract_features(const Mesh& mesh) {
    validate_mesh(mesh);
    const Aabb box = aabb(mesh);
    const Vec3 ext = box.extent();
    const Vec3 cen = centroid(mesh);
    const double area = surface_area(mesh);
    const double vol = volume(mesh);

    constexpr double eps = 1e-9;
    FeatureVector fv;
    auto clamped = [&fv](double d) {
        if (d < 1e-9) {
            fv.degenerate = true;
            return eps;
        }
        return d;
    };

    const double emax = std::max({ext.x, ext.y, ext.z});
    const double emin = std::min({ext.x, ext.y, ext.z});
    const double horiz = std::max(ext.x, ext.y);

    fv.values = {ext.x,
                 ext.y,
                 ext.z,
                 box.min.x,
                 box.min.y,
                 box.min.z,
                 box.max.x,
                 box.max.y,
                 box.max.z,
                 cen.x,
                 cen.y,
                 cen.z,
                 area,
                 vol,
                 static_cast<double>(mesh.triangles.size()),
                 static_cast<double>(mesh.vertices.size()),
                 emax / clamped(emin),
                 ext.z / clamped(horiz),
                 vol / (clamped(ext.x) * clamped(ext.y) * clamped(ext.z))};
    return fv;
}

void features_to_csv(const std::vector<FeatureRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");

    out << "id,label";
    for (const char* name : kFeatureNames) out << ',' << name;
    out << '\n';

    char buf[32];
    for (const auto& row : rows) {
        out << row.id << ',' << (row.label ? *row.label : "");
        for (double v : row.features.values) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::vector<FeatureRow> features_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw FormatError("csv: empty file");

    std::vector<FeatureRow> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (cells.size() != 2 + kFeatureCount)
            throw FormatError("csv: line " + std::to_string(line_no) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(2 + kFeatureCount));
        FeatureRow row;
        row.id = cells[0];
        if (!cells[1].empty()) row.label = cells[1];
        for (int i = 0; i < kFeatureCount; ++i) {
            try {
                row.features.values[static_cast<size_t>(i)] = std::stod(cells[2 + i]);
            } catch (const std::exception&) {
                throw FormatError("csv: line " + std::to_string(line_no) +
                                  ": bad numeric cell '" + cells[2 + i] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace bimsem
