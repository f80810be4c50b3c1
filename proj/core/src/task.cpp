#include "refkernel/task.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

Task split_task(const Dataset& ds, const TaskSpec& spec, Rng& rng, double train_ratio) {
    if (spec.target_class >= ds.class_count()) {
        throw InvalidShape("target class " + std::to_string(spec.target_class) +
                           " out of range for " + std::to_string(ds.class_count()) + " classes");
    }

    std::vector<std::size_t> train_target, train_neg, test_idx;
    std::vector<int> y_test;

    for (std::size_t c = 0; c < ds.class_count(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t j = 0; j < ds.labels.size(); ++j) {
            if (ds.labels[j] == c) members.push_back(j);
        }
        if (members.size() < 2) {
            throw InsufficientData("class '" + ds.class_names[c] + "' has " +
                                   std::to_string(members.size()) +
                                   " samples; need at least 2 to split");
        }
        const auto order = shuffled_indices(members.size(), rng);

        // Stochastic rounding keeps the expected ratio exact while letting the
        // per-split counts vary; both sides keep at least one sample.
        const double want = train_ratio * static_cast<double>(members.size());
        std::size_t n_train = static_cast<std::size_t>(want);
        const double frac = want - static_cast<double>(n_train);
        if (uniform_real(0.0, 1.0, rng) < frac) ++n_train;
        n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);

        for (std::size_t k = 0; k < members.size(); ++k) {
            const std::size_t j = members[order[k]];
            if (k < n_train) {
                (c == spec.target_class ? train_target : train_neg).push_back(j);
            } else {
                test_idx.push_back(j);
                y_test.push_back(c == spec.target_class ? 1 : 0);
            }
        }
    }

    Task task;
    task.name = spec.name;
    task.target_class = spec.target_class;

    const DenseMatrix raw_train = ds.features.select_columns(train_target);
    task.norm = compute_norm_stats(raw_train);
    task.x_train = apply_norm(task.norm, raw_train);
    task.x_neg_train = apply_norm(task.norm, ds.features.select_columns(train_neg));
    task.x_test = apply_norm(task.norm, ds.features.select_columns(test_idx));
    task.y_test = std::move(y_test);
    return task;
}

double gmean_percent(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw InvalidShape("label vectors differ in length: " + std::to_string(y_true.size()) +
                           " vs " + std::to_string(y_pred.size()));
    }
    std::size_t tp = 0, fn = 0, tn = 0, fp = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1) {
            (y_pred[i] == 1 ? tp : fn) += 1;
        } else {
            (y_pred[i] == 0 ? tn : fp) += 1;
        }
    }
    if (tp + fn == 0 || tn + fp == 0) {
        throw UndefinedMetric("geometric mean needs both classes present");
    }
    const double tpr = static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double tnr = static_cast<double>(tn) / static_cast<double>(tn + fp);
    return 100.0 * std::sqrt(tpr * tnr);
}

} // namespace refkernel
