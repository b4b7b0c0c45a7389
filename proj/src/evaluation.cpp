#include "bimsem/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "bimsem/errors.hpp"

namespace bimsem {

EvalReport evaluate(const AnyModel& model, const LabeledDataset& set) {
    if (set.size() == 0) throw DataError("empty evaluation set");

    std::set<std::string> all;
    std::visit([&](const auto& m) { all.insert(m.classes.begin(), m.classes.end()); }, model);
    all.insert(set.labels.begin(), set.labels.end());

    EvalReport report;
    report.classes.assign(all.begin(), all.end());
    const size_t nc = report.classes.size();
    report.confusion.assign(nc, std::vector<int>(nc, 0));

    auto index_of = [&](const std::string& label) {
        return static_cast<size_t>(std::lower_bound(report.classes.begin(), report.classes.end(),
                                                    label) -
                                   report.classes.begin());
    };

    int correct = 0;
    for (size_t i = 0; i < set.size(); ++i) {
        const Prediction p = predict(model, set.features[i]);
        const size_t t = index_of(set.labels[i]);
        const size_t q = index_of(p.label);
        ++report.confusion[t][q];
        if (t == q) ++correct;
    }
    report.total = static_cast<int>(set.size());
    report.accuracy = static_cast<double>(correct) / static_cast<double>(set.size());

    report.precision.assign(nc, 0.0);
    report.recall.assign(nc, 0.0);
    report.f1.assign(nc, 0.0);
    double f1_sum = 0.0;
    int f1_n = 0;
    for (size_t c = 0; c < nc; ++c) {
        int tp = report.confusion[c][c];
        int support = 0, predicted = 0;
        for (size_t j = 0; j < nc; ++j) {
            support += report.confusion[c][j];
            predicted += report.confusion[j][c];
        }
        report.precision[c] = predicted > 0 ? static_cast<double>(tp) / predicted : 0.0;
        report.recall[c] = support > 0 ? static_cast<double>(tp) / support : 0.0;
        const double pr = report.precision[c] + report.recall[c];
        report.f1[c] = pr > 0.0 ? 2.0 * report.precision[c] * report.recall[c] / pr : 0.0;
        if (support > 0 || predicted > 0) {
            f1_sum += report.f1[c];
            ++f1_n;
        }
    }
    report.macro_f1 = f1_n > 0 ? f1_sum / f1_n : 0.0;
    return report;
}

std::string render_report(const EvalReport& report) {
    std::ostringstream out;
    size_t width = 8;
    for (const auto& c : report.classes) width = std::max(width, c.size() + 2);

    char buf[64];
    out << std::string(width, ' ') << "precision   recall       f1  support\n";
    for (size_t c = 0; c < report.classes.size(); ++c) {
        int support = 0;
        for (size_t j = 0; j < report.classes.size(); ++j) support += report.confusion[c][j];
        std::snprintf(buf, sizeof(buf), "%9.4f%9.4f%9.4f%9d\n", report.precision[c],
                      report.recall[c], report.f1[c], support);
        out << report.classes[c] << std::string(width - report.classes[c].size(), ' ') << buf;
    }
    std::snprintf(buf, sizeof(buf), "accuracy %.4f   macro_f1 %.4f   n %d\n", report.accuracy,
                  report.macro_f1, report.total);
    out << buf;
    return out.str();
}

std::string render_accuracy_table(const std::vector<AccuracyRow>& rows) {
    size_t width = 10;
    for (const auto& r : rows) width = std::max(width, r.algorithm.size() + 2);

    std::ostringstream out;
    out << "algorithm" << std::string(width - 9, ' ') << "valid accuracy  test accuracy\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%13.2f%%%14.2f%%\n", 100.0 * r.valid_accuracy,
                      100.0 * r.test_accuracy);
        out << r.algorithm << std::string(width - r.algorithm.size(), ' ') << buf;
    }
    return out.str();
}

} // namespace bimsem
