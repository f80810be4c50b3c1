#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "refkernel/dense_matrix.hpp"

namespace refkernel {

/// A labeled tabular dataset, one sample per column. Class ids are assigned
/// by first appearance of each label value in file order, so loading is
/// deterministic.
struct Dataset {
    std::string name;                 // file stem with the first letter upcased
    DenseMatrix features;             // D x N_total
    std::vector<std::size_t> labels;  // class id per column
    std::vector<std::string> class_names;
    std::vector<std::string> feature_names;

    std::size_t class_count() const { return class_names.size(); }
};

// Loads a CSV with a header row. label_column names the label; every other
// column must be numeric. Throws FormatError (with a line number) on
// structural problems: missing header, unknown label column, ragged rows,
// non-numeric features, or no data rows.
Dataset load_csv(const std::string& path, const std::string& label_column);

// Loads an all-numeric CSV with a header row; every column is a feature.
DenseMatrix load_features_csv(const std::string& path);

/// One one-class task: one class of a dataset plays target, the rest are
/// outliers.
struct TaskSpec {
    std::string name; // dataset name + 1-based class index, e.g. "Iris2"
    std::size_t target_class = 0;
};

// One task per class, in class-id order.
std::vector<TaskSpec> make_tasks(const Dataset& ds);

} // namespace refkernel
