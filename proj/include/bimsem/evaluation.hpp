#pragma once

#include <string>
#include <vector>

#include "bimsem/classifier.hpp"

namespace bimsem {

struct EvalReport {
    std::vector<std::string> classes;
    std::vector<std::vector<int>> confusion; // [true class][predicted class]
    std::vector<double> precision, recall, f1;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    int total = 0;
};

// Accuracy, per-class precision/recall/F1 and the confusion matrix.
// Macro F1 averages over classes that occur in the set or were predicted.
EvalReport evaluate(const AnyModel& model, const LabeledDataset& set);

std::string render_report(const EvalReport& report);

struct AccuracyRow {
    std::string algorithm;
    double valid_accuracy = 0.0;
    double test_accuracy = 0.0;
};

// Aligned two-column accuracy table, one row per algorithm.
std::string render_accuracy_table(const std::vector<AccuracyRow>& rows);

} // namespace bimsem
