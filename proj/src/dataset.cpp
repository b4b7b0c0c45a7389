#include "bimsem/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "bimsem/errors.hpp"
#include "bimsem/rng.hpp"

namespace bimsem {

DatasetSplit split(const LabeledDataset& dataset, const SplitSpec& spec) {
    const size_t n = dataset.size();
    if (n < 10) throw DataError("size: dataset has " + std::to_string(n) + " rows, need >= 10");
    if (std::abs(spec.train_fraction + spec.valid_fraction + spec.test_fraction - 1.0) > 1e-9)
        throw DataError("split fractions must sum to 1.0");

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(spec.seed);
    rng.shuffle(order);

    const size_t n_train = static_cast<size_t>(std::floor(spec.train_fraction * static_cast<double>(n)));
    const size_t n_valid = static_cast<size_t>(std::floor(spec.valid_fraction * static_cast<double>(n)));

    DatasetSplit out;
    for (size_t i = 0; i < n; ++i) {
        LabeledDataset& part = i < n_train ? out.train : (i < n_train + n_valid ? out.valid : out.test);
        part.add(dataset.features[order[i]], dataset.labels[order[i]]);
    }
    return out;
}

std::vector<std::string> class_names(const LabeledDataset& dataset) {
    std::set<std::string> s(dataset.labels.begin(), dataset.labels.end());
    return {s.begin(), s.end()};
}

} // namespace bimsem
