#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bimsem/geometry.hpp"

namespace bimsem {

inline constexpr int kFeatureCount = 19;

// Canonical feature order. This order is the classifier's input contract
// and the CSV column order.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "extent_x",  "extent_y",  "extent_z",  "min_x",      "min_y",
    "min_z",     "max_x",     "max_y",     "max_z",      "centroid_x",
    "centroid_y", "centroid_z", "surface_area", "volume", "face_count",
    "vertex_count", "extent_ratio_max_min", "vertical_ratio", "aabb_fill"};

// Indices of the location-dependent features (mins, maxes, centroid).
// Models trained without these are translation-invariant.
inline constexpr std::array<int, 9> kLocationFeatureIndices = {3, 4, 5, 6, 7, 8, 9, 10, 11};

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    // true when a ratio denominator had to be clamped (zero extent)
    bool degenerate = false;

    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

// Compute the 19-dimensional geometric feature vector.
// Centroid is the unweighted vertex mean. Ratio denominators are clamped
// to 1e-9 and the vector flagged degenerate when an extent is zero.
FeatureVector extract_features(const Mesh& mesh);

struct FeatureRow {
    std::string id;
    std::optional<std::string> label; // empty for unlabeled data
    FeatureVector features;
};

// CSV layout: id,label,<19 feature columns>; label column left empty for
// unlabeled rows. Values carry 17 significant digits so a reload
// reproduces them to double precision.
void features_to_csv(const std::vector<FeatureRow>& rows, const std::string& path);

std::vector<FeatureRow> features_from_csv(const std::string& path);

} // namespace bimsem
