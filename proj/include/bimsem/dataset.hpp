#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bimsem/features.hpp"

namespace bimsem {

struct LabeledDataset {
    std::vector<FeatureVector> features;
    std::vector<std::string> labels;

    size_t size() const { return features.size(); }
    void add(const FeatureVector& fv, const std::string& label) {
        features.push_back(fv);
        labels.push_back(label);
    }
};

struct SplitSpec {
    double train_fraction = 0.7;
    double valid_fraction = 0.1;
    double test_fraction = 0.2;
    uint64_t seed = 0;
};

struct DatasetSplit {
    LabeledDataset train, valid, test;
};

// Seeded shuffle followed by contiguous slicing. Train and validation
// sizes are floor(fraction * n); the remainder goes to test. The three
// parts partition the input exactly.
DatasetSplit split(const LabeledDataset& dataset, const SplitSpec& spec);

// Sorted unique labels of a dataset.
std::vector<std::string> class_names(const LabeledDataset& dataset);

} // namespace bimsem
