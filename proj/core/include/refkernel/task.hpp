#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "refkernel/dataset.hpp"
#include "refkernel/dense_matrix.hpp"
#include "refkernel/rng.hpp"
#include "refkernel/standardize.hpp"

namespace refkernel {

/// Materialized train/test split of one task. All blocks are standardized
/// with statistics taken from the target training block alone.
struct Task {
    std::string name;
    std::size_t target_class = 0;
    DenseMatrix x_train;     // target training samples, D x N
    DenseMatrix x_neg_train; // training samples of every other class, D x N_neg
    DenseMatrix x_test;      // held-out samples of all classes, D x N_test
    std::vector<int> y_test; // 1 = target, 0 = outlier, aligned with x_test
    NormStats norm;
};

// Stratified split. Every class keeps train_ratio of its samples for
// training, rounded stochastically: floor(ratio * N_c) plus a Bernoulli draw
// on the fractional part, clamped so both sides keep at least one sample.
// Consumes the RNG per class in id order (shuffle, then the rounding draw).
// A class with fewer than two samples throws InsufficientData.
Task split_task(const Dataset& ds, const TaskSpec& spec, Rng& rng, double train_ratio = 0.7);

// Geometric mean of the true-positive and true-negative rates, scaled to
// percent. Throws UndefinedMetric unless both classes appear in y_true,
// InvalidShape on length mismatch. Labels: 1 = target, 0 = outlier.
double gmean_percent(const std::vector<int>& y_true, const std::vector<int>& y_pred);

} // namespace refkernel
