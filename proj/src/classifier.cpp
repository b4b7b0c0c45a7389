#include "bimsem/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include <json.hpp>

#include "bimsem/errors.hpp"
#include "bimsem/rng.hpp"

namespace bimsem {

namespace {

using json = nlohmann::ordered_json;

double gini(const std::vector<double>& counts, double total) {
    if (total <= 0.0) return 0.0;
    double g = 1.0;
    for (double c : counts) {
        const double p = c / total;
        g -= p * p;
    }
    return g;
}

std::vector<int> resolve_feature_subset(const std::vector<int>& subset) {
    std::vector<int> allowed = subset;
    if (allowed.empty()) {
        allowed.resize(kFeatureCount);
        std::iota(allowed.begin(), allowed.end(), 0);
    }
    std::sort(allowed.begin(), allowed.end());
    for (int f : allowed)
        if (f < 0 || f >= kFeatureCount)
            throw DataError("feature-arity: feature index " + std::to_string(f) +
                            " out of range [0," + std::to_string(kFeatureCount) + ")");
    return allowed;
}

struct TreeBuilder {
    const LabeledDataset& data;
    const std::vector<int>& row_class;
    int n_classes;
    int max_depth;
    int min_leaf;
    const std::vector<int>& allowed_features;
    int features_per_split; // <= 0 or >= allowed size: use all
    Rng* rng;               // only consulted when subsampling features

    std::vector<TreeNode> nodes;

    int build(std::vector<size_t>& rows, int depth) {
        std::vector<double> counts(static_cast<size_t>(n_classes), 0.0);
        for (size_t r : rows) counts[static_cast<size_t>(row_class[r])] += 1.0;
        const double total = static_cast<double>(rows.size());

        const bool pure = std::count(counts.begin(), counts.end(), 0.0) >= n_classes - 1;
        int node_index = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes.back().class_counts = counts;
        if (pure || depth >= max_depth || rows.size() < 2) return node_index;

        // candidate features for this split
        std::vector<int> candidates;
        if (features_per_split > 0 &&
            features_per_split < static_cast<int>(allowed_features.size()) && rng) {
            std::vector<int> pool = allowed_features;
            for (int i = 0; i < features_per_split; ++i) {
                size_t j = i + static_cast<size_t>(rng->bounded(pool.size() - static_cast<size_t>(i)));
                std::swap(pool[static_cast<size_t>(i)], pool[j]);
            }
            candidates.assign(pool.begin(), pool.begin() + features_per_split);
            std::sort(candidates.begin(), candidates.end());
        } else {
            candidates = allowed_features;
        }

        // greedy best split; ties fall to the lowest feature index, then
        // the lowest threshold (strict < with ascending iteration)
        double best_impurity = gini(counts, total);
        int best_feature = -1;
        double best_threshold = 0.0;
        std::vector<std::pair<double, int>> vals(rows.size());

        for (int f : candidates) {
            for (size_t i = 0; i < rows.size(); ++i)
                vals[i] = {data.features[rows[i]][f], row_class[rows[i]]};
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::vector<double> left(static_cast<size_t>(n_classes), 0.0);
            std::vector<double> right = counts;
            for (size_t i = 1; i < vals.size(); ++i) {
                const int c = vals[i - 1].second;
                left[static_cast<size_t>(c)] += 1.0;
                right[static_cast<size_t>(c)] -= 1.0;
                if (vals[i].first == vals[i - 1].first) continue;
                const double nl = static_cast<double>(i);
                const double nr = total - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double thr = 0.5 * (vals[i - 1].first + vals[i].first);
                if (!(vals[i - 1].first < thr && thr <= vals[i].first)) continue; // fp midpoint collapse
                const double impurity = (nl * gini(left, nl) + nr * gini(right, nr)) / total;
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_feature = f;
                    best_threshold = thr;
                }
            }
        }

        if (best_feature < 0) return node_index; // no useful split

        std::vector<size_t> left_rows, right_rows;
        for (size_t r : rows)
            (data.features[r][best_feature] < best_threshold ? left_rows : right_rows).push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        nodes[static_cast<size_t>(node_index)].feature = best_feature;
        nodes[static_cast<size_t>(node_index)].threshold = best_threshold;
        const int li = build(left_rows, depth + 1);
        nodes[static_cast<size_t>(node_index)].left = li;
        const int ri = build(right_rows, depth + 1);
        nodes[static_cast<size_t>(node_index)].right = ri;
        return node_index;
    }
};

std::vector<int> class_indices(const LabeledDataset& data, const std::vector<std::string>& classes) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < classes.size(); ++i) index[classes[i]] = static_cast<int>(i);
    std::vector<int> out(data.size());
    for (size_t i = 0; i < data.size(); ++i) out[i] = index.at(data.labels[i]);
    return out;
}

TreeModel train_tree_on(const LabeledDataset& data, const std::vector<size_t>& row_subset,
                        const std::vector<std::string>& classes, const std::vector<int>& row_class,
                        const TreeParams& params, const std::vector<int>& allowed,
                        int features_per_split, Rng* rng) {
    TreeModel model;
    model.classes = classes;
    model.params = params;
    TreeBuilder builder{data, row_class, static_cast<int>(classes.size()),
                        params.max_depth, params.min_leaf, allowed, features_per_split, rng, {}};
    std::vector<size_t> rows = row_subset;
    builder.build(rows, 0);
    model.nodes = std::move(builder.nodes);
    return model;
}

} // namespace

TreeModel train_tree(const LabeledDataset& train, const TreeParams& params) {
    if (train.size() == 0) throw DataError("empty training set");
    const auto classes = class_names(train);
    const auto row_class = class_indices(train, classes);
    const auto allowed = resolve_feature_subset(params.feature_subset);
    std::vector<size_t> rows(train.size());
    std::iota(rows.begin(), rows.end(), size_t{0});
    return train_tree_on(train, rows, classes, row_class, params, allowed, 0, nullptr);
}

ForestModel train_forest(const LabeledDataset& train, const ForestParams& params) {
    if (train.size() == 0) throw DataError("empty training set");
    if (params.n_trees < 1) throw DataError("forest size must be >= 1");
    const auto classes = class_names(train);
    const auto row_class = class_indices(train, classes);
    const auto allowed = resolve_feature_subset(params.feature_subset);

    ForestModel model;
    model.classes = classes;
    model.params = params;

    Rng root(params.seed);
    for (int t = 0; t < params.n_trees; ++t) model.tree_seeds.push_back(root.next_u64());

    TreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_leaf = params.min_leaf;
    tree_params.feature_subset = params.feature_subset;

    for (int t = 0; t < params.n_trees; ++t) {
        Rng rng(model.tree_seeds[static_cast<size_t>(t)]);
        std::vector<size_t> rows(train.size());
        if (params.bootstrap) {
            for (auto& r : rows) r = static_cast<size_t>(rng.bounded(train.size()));
            std::sort(rows.begin(), rows.end());
        } else {
            std::iota(rows.begin(), rows.end(), size_t{0});
        }
        model.trees.push_back(train_tree_on(train, rows, classes, row_class, tree_params,
                                            allowed, params.features_per_split, &rng));
    }
    return model;
}

KnnModel train_knn(const LabeledDataset& train, const KnnParams& params) {
    if (train.size() == 0) throw DataError("empty training set");
    if (params.k < 1) throw DataError("knn k must be >= 1");
    KnnModel model;
    model.classes = class_names(train);
    model.params = params;
    const auto row_class = class_indices(train, model.classes);

    const double n = static_cast<double>(train.size());
    for (int f = 0; f < kFeatureCount; ++f) {
        double mean = 0.0;
        for (const auto& fv : train.features) mean += fv[f];
        mean /= n;
        double var = 0.0;
        for (const auto& fv : train.features) var += (fv[f] - mean) * (fv[f] - mean);
        var /= n;
        model.mean[static_cast<size_t>(f)] = mean;
        const double sd = std::sqrt(var);
        model.stddev[static_cast<size_t>(f)] = sd < 1e-12 ? 1.0 : sd;
    }
    for (size_t i = 0; i < train.size(); ++i) {
        std::array<double, kFeatureCount> row{};
        for (int f = 0; f < kFeatureCount; ++f)
            row[static_cast<size_t>(f)] =
                (train.features[i][f] - model.mean[static_cast<size_t>(f)]) /
                model.stddev[static_cast<size_t>(f)];
        model.rows.push_back(row);
        model.labels.push_back(row_class[i]);
    }
    return model;
}

namespace {

Prediction from_distribution(const std::vector<std::string>& classes,
                             const std::vector<double>& weights) {
    size_t best = 0;
    for (size_t i = 1; i < weights.size(); ++i)
        if (weights[i] > weights[best]) best = i; // first max = lexicographically lowest class
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    return {classes[best], total > 0.0 ? weights[best] / total : 0.0};
}

const TreeNode& walk(const TreeModel& model, const FeatureVector& fv) {
    if (model.nodes.empty()) throw DataError("empty tree model");
    size_t i = 0;
    while (model.nodes[i].feature >= 0) {
        const TreeNode& node = model.nodes[i];
        if (node.feature >= kFeatureCount)
            throw DataError("feature-arity: model references feature " +
                            std::to_string(node.feature));
        i = static_cast<size_t>(fv[node.feature] < node.threshold ? node.left : node.right);
    }
    return model.nodes[i];
}

} // namespace

Prediction predict(const TreeModel& model, const FeatureVector& fv) {
    return from_distribution(model.classes, walk(model, fv).class_counts);
}

Prediction predict(const ForestModel& model, const FeatureVector& fv) {
    std::vector<double> votes(model.classes.size(), 0.0);
    for (const auto& tree : model.trees) {
        const Prediction p = predict(tree, fv);
        const auto it = std::find(model.classes.begin(), model.classes.end(), p.label);
        votes[static_cast<size_t>(it - model.classes.begin())] += 1.0;
    }
    return from_distribution(model.classes, votes);
}

Prediction predict(const KnnModel& model, const FeatureVector& fv) {
    std::array<double, kFeatureCount> q{};
    for (int f = 0; f < kFeatureCount; ++f)
        q[static_cast<size_t>(f)] = (fv[f] - model.mean[static_cast<size_t>(f)]) /
                                    model.stddev[static_cast<size_t>(f)];

    std::vector<std::pair<double, size_t>> dist(model.rows.size());
    for (size_t i = 0; i < model.rows.size(); ++i) {
        double d2 = 0.0;
        for (int f = 0; f < kFeatureCount; ++f) {
            const double d = q[static_cast<size_t>(f)] - model.rows[i][static_cast<size_t>(f)];
            d2 += d * d;
        }
        dist[i] = {d2, i};
    }
    const size_t k = std::min(static_cast<size_t>(model.params.k), dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k), dist.end());

    std::vector<double> weights(model.classes.size(), 0.0);
    for (size_t i = 0; i < k; ++i)
        weights[static_cast<size_t>(model.labels[dist[i].second])] +=
            1.0 / (std::sqrt(dist[i].first) + 1e-12);
    return from_distribution(model.classes, weights);
}

Prediction predict(const AnyModel& model, const FeatureVector& fv) {
    return std::visit([&](const auto& m) { return predict(m, fv); }, model);
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json nodes_to_json(const TreeModel& tree) {
    json arr = json::array();
    for (const auto& n : tree.nodes)
        arr.push_back(json::array({n.feature, n.threshold, n.left, n.right, n.class_counts}));
    return arr;
}

std::vector<TreeNode> nodes_from_json(const json& arr, size_t n_classes) {
    std::vector<TreeNode> nodes;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 5) throw FormatError("model: malformed tree node");
        TreeNode n;
        n.feature = e[0].get<int>();
        n.threshold = e[1].get<double>();
        n.left = e[2].get<int>();
        n.right = e[3].get<int>();
        n.class_counts = e[4].get<std::vector<double>>();
        if (n.feature >= kFeatureCount)
            throw DataError("feature-arity: model references feature " + std::to_string(n.feature));
        if (n.class_counts.size() != n_classes)
            throw FormatError("model: node class distribution arity mismatch");
        nodes.push_back(std::move(n));
    }
    const int count = static_cast<int>(nodes.size());
    for (const auto& n : nodes)
        if (n.feature >= 0 && (n.left < 0 || n.left >= count || n.right < 0 || n.right >= count))
            throw FormatError("model: tree child index out of range");
    return nodes;
}

json tree_params_json(const TreeParams& p) {
    return json{{"max_depth", p.max_depth}, {"min_leaf", p.min_leaf},
                {"feature_subset", p.feature_subset}};
}

TreeParams tree_params_from(const json& j) {
    TreeParams p;
    p.max_depth = j.at("max_depth").get<int>();
    p.min_leaf = j.at("min_leaf").get<int>();
    p.feature_subset = j.at("feature_subset").get<std::vector<int>>();
    return p;
}

} // namespace

void save_model(const AnyModel& model, const std::string& path) {
    json j;
    j["format"] = "bimsem-model";
    j["version"] = 1;
    if (const auto* tree = std::get_if<TreeModel>(&model)) {
        j["kind"] = "tree";
        j["classes"] = tree->classes;
        j["params"] = tree_params_json(tree->params);
        j["nodes"] = nodes_to_json(*tree);
    } else if (const auto* forest = std::get_if<ForestModel>(&model)) {
        j["kind"] = "forest";
        j["classes"] = forest->classes;
        j["params"] = json{{"n_trees", forest->params.n_trees},
                           {"max_depth", forest->params.max_depth},
                           {"min_leaf", forest->params.min_leaf},
                           {"features_per_split", forest->params.features_per_split},
                           {"bootstrap", forest->params.bootstrap},
                           {"seed", forest->params.seed},
                           {"feature_subset", forest->params.feature_subset}};
        j["tree_seeds"] = forest->tree_seeds;
        json trees = json::array();
        for (const auto& t : forest->trees) trees.push_back(json{{"nodes", nodes_to_json(t)}});
        j["trees"] = std::move(trees);
    } else {
        const auto& knn = std::get<KnnModel>(model);
        j["kind"] = "knn";
        j["classes"] = knn.classes;
        j["params"] = json{{"k", knn.params.k}};
        j["mean"] = knn.mean;
        j["stddev"] = knn.stddev;
        json rows = json::array();
        for (const auto& r : knn.rows) rows.push_back(r);
        j["rows"] = std::move(rows);
        j["labels"] = knn.labels;
    }

    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

AnyModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FormatError(std::string("model: invalid json: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "bimsem-model")
            throw FormatError("model: unrecognized format tag");
        if (j.at("version").get<int>() != 1)
            throw FormatError("model: unsupported version");
        const std::string kind = j.at("kind").get<std::string>();
        const auto classes = j.at("classes").get<std::vector<std::string>>();
        if (kind == "tree") {
            TreeModel m;
            m.classes = classes;
            m.params = tree_params_from(j.at("params"));
            m.nodes = nodes_from_json(j.at("nodes"), classes.size());
            return m;
        }
        if (kind == "forest") {
            ForestModel m;
            m.classes = classes;
            const auto& p = j.at("params");
            m.params.n_trees = p.at("n_trees").get<int>();
            m.params.max_depth = p.at("max_depth").get<int>();
            m.params.min_leaf = p.at("min_leaf").get<int>();
            m.params.features_per_split = p.at("features_per_split").get<int>();
            m.params.bootstrap = p.at("bootstrap").get<bool>();
            m.params.seed = p.at("seed").get<uint64_t>();
            m.params.feature_subset = p.at("feature_subset").get<std::vector<int>>();
            m.tree_seeds = j.at("tree_seeds").get<std::vector<uint64_t>>();
            for (const auto& t : j.at("trees")) {
                TreeModel tree;
                tree.classes = classes;
                tree.params.max_depth = m.params.max_depth;
                tree.params.min_leaf = m.params.min_leaf;
                tree.params.feature_subset = m.params.feature_subset;
                tree.nodes = nodes_from_json(t.at("nodes"), classes.size());
                m.trees.push_back(std::move(tree));
            }
            return m;
        }
        if (kind == "knn") {
            KnnModel m;
            m.classes = classes;
            m.params.k = j.at("params").at("k").get<int>();
            m.mean = j.at("mean").get<std::array<double, kFeatureCount>>();
            m.stddev = j.at("stddev").get<std::array<double, kFeatureCount>>();
            for (const auto& r : j.at("rows"))
                m.rows.push_back(r.get<std::array<double, kFeatureCount>>());
            m.labels = j.at("labels").get<std::vector<int>>();
            if (m.labels.size() != m.rows.size())
                throw FormatError("model: knn rows/labels size mismatch");
            for (int l : m.labels)
                if (l < 0 || l >= static_cast<int>(classes.size()))
                    throw FormatError("model: knn label index out of range");
            return m;
        }
        throw FormatError("model: unknown kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw FormatError(std::string("model: missing or mistyped field: ") + e.what());
    }
}

} // namespace bimsem
