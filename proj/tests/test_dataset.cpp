#include <doctest.h>

#include <map>

#include "bimsem/dataset.hpp"
#include "bimsem/errors.hpp"
#include "support.hpp"

using namespace bimsem;
using namespace test_support;

namespace {

LabeledDataset counting_dataset(int n) {
    LabeledDataset data;
    for (int i = 0; i < n; ++i) {
        FeatureVector fv;
        fv.values[0] = static_cast<double>(i); // row identity lives in feature 0
        data.add(fv, i % 2 ? "wall" : "floor");
    }
    return data;
}

} // namespace

TEST_CASE("1484 rows split 7:1:2 gives 1038/148/298") {
    const auto parts = split(counting_dataset(1484), {0.7, 0.1, 0.2, 11});
    CHECK(parts.train.size() == 1038);
    CHECK(parts.valid.size() == 148);
    CHECK(parts.test.size() == 298);
}

TEST_CASE("10 rows split 7/1/2") {
    const auto parts = split(counting_dataset(10), {0.7, 0.1, 0.2, 0});
    CHECK(parts.train.size() == 7);
    CHECK(parts.valid.size() == 1);
    CHECK(parts.test.size() == 2);
}

TEST_CASE("same seed gives identical partition") {
    const auto a = split(counting_dataset(100), {0.7, 0.1, 0.2, 5});
    const auto b = split(counting_dataset(100), {0.7, 0.1, 0.2, 5});
    for (size_t i = 0; i < a.train.size(); ++i)
        CHECK(a.train.features[i][0] == b.train.features[i][0]);
    for (size_t i = 0; i < a.test.size(); ++i)
        CHECK(a.test.features[i][0] == b.test.features[i][0]);
}

TEST_CASE("partition is exact: no overlap, union is the dataset") {
    const int n = 137;
    const auto parts = split(counting_dataset(n), {0.7, 0.1, 0.2, 3});
    std::map<int, int> seen;
    auto count = [&](const LabeledDataset& part) {
        for (const auto& fv : part.features) ++seen[static_cast<int>(fv[0])];
    };
    count(parts.train);
    count(parts.valid);
    count(parts.test);
    CHECK(seen.size() == static_cast<size_t>(n));
    for (const auto& [row, times] : seen) CHECK(times == 1);
    CHECK(parts.train.size() + parts.valid.size() + parts.test.size() == static_cast<size_t>(n));
}

TEST_CASE("different seeds usually differ") {
    const auto a = split(counting_dataset(100), {0.7, 0.1, 0.2, 1});
    const auto b = split(counting_dataset(100), {0.7, 0.1, 0.2, 2});
    bool any_difference = false;
    for (size_t i = 0; i < a.train.size(); ++i)
        any_difference |= a.train.features[i][0] != b.train.features[i][0];
    CHECK(any_difference);
}

TEST_CASE("dataset below 10 rows is rejected") {
    CHECK_THROWS_AS(split(counting_dataset(9), {0.7, 0.1, 0.2, 0}), DataError);
}

TEST_CASE("fractions must sum to one") {
    CHECK_THROWS_AS(split(counting_dataset(50), {0.6, 0.1, 0.2, 0}), DataError);
}

TEST_CASE("class_names sorted unique") {
    LabeledDataset data = counting_dataset(10);
    const auto names = class_names(data);
    REQUIRE(names.size() == 2);
    CHECK(names[0] == "floor");
    CHECK(names[1] == "wall");
}
