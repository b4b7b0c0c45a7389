#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bimsem/dataset.hpp"

namespace bimsem {

// ---------------------------------------------------------------------------
// Models

struct TreeNode {
    int feature = -1;      // -1 for leaves
    double threshold = 0.0; // go left when value < threshold
    int left = -1, right = -1;
    std::vector<double> class_counts; // per class, leaf distribution
};

struct TreeParams {
    int max_depth = 12;
    int min_leaf = 1;
    // restrict split search to these feature indices; empty = all 19
    std::vector<int> feature_subset;
};

struct TreeModel {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    std::vector<std::string> classes;
    TreeParams params;
};

struct ForestParams {
    int n_trees = 50;
    int max_depth = 12;
    int min_leaf = 1;
    int features_per_split = 5; // ceil(sqrt(19))
    bool bootstrap = true;
    uint64_t seed = 0;
    std::vector<int> feature_subset;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    std::vector<uint64_t> tree_seeds; // per-tree bootstrap/feature-subset seeds
    std::vector<std::string> classes;
    ForestParams params;
};

struct KnnParams {
    int k = 5;
};

// Euclidean KNN over z-score-standardized features, distance-weighted vote.
struct KnnModel {
    std::vector<std::array<double, kFeatureCount>> rows; // standardized
    std::vector<int> labels;                             // class indices
    std::array<double, kFeatureCount> mean{}, stddev{};
    std::vector<std::string> classes;
    KnnParams params;
};

using AnyModel = std::variant<TreeModel, ForestModel, KnnModel>;

struct Prediction {
    std::string label;
    double confidence = 0.0; // winning vote share, in [0, 1]
};

// ---------------------------------------------------------------------------
// Training

// CART with Gini impurity. Greedy best split over candidate thresholds at
// midpoints of sorted distinct values. Ties resolve to the lowest feature
// index, then the lowest threshold, so training is deterministic.
TreeModel train_tree(const LabeledDataset& train, const TreeParams& params = {});

// Bootstrap-sampled trees with per-split random feature subsets. Fully
// deterministic for a given seed. With n_trees = 1, bootstrap off and a
// full feature subset this reduces exactly to train_tree.
ForestModel train_forest(const LabeledDataset& train, const ForestParams& params = {});

KnnModel train_knn(const LabeledDataset& train, const KnnParams& params = {});

// ---------------------------------------------------------------------------
// Prediction

Prediction predict(const TreeModel& model, const FeatureVector& fv);
Prediction predict(const ForestModel& model, const FeatureVector& fv);
Prediction predict(const KnnModel& model, const FeatureVector& fv);
Prediction predict(const AnyModel& model, const FeatureVector& fv);

// ---------------------------------------------------------------------------
// Persistence (versioned JSON)

void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

} // namespace bimsem
