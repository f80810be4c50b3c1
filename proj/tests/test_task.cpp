#include <doctest.h>

#include <cmath>
#include <set>

#include "refkernel/dataset.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/rng.hpp"
#include "refkernel/task.hpp"

using refkernel::Dataset;
using refkernel::DenseMatrix;
using refkernel::TaskSpec;

namespace {

// Three classes of 50/50/50 like the bundled flower table: 0.7 * 50 = 35
// exactly, so the stochastic rounding draw never changes the count.
Dataset balanced_dataset() {
    Dataset ds;
    ds.name = "Synth";
    ds.class_names = {"c0", "c1", "c2"};
    ds.feature_names = {"f0", "f1"};
    const std::size_t per_class = 50;
    ds.features = DenseMatrix(2, 3 * per_class);
    auto rng = refkernel::make_rng(7, "test/task-synth");
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t j = 0; j < per_class; ++j) {
            const std::size_t col = c * per_class + j;
            ds.features(0, col) = static_cast<double>(c) * 4.0 +
                                  refkernel::uniform_real(-1.0, 1.0, rng);
            ds.features(1, col) = refkernel::uniform_real(-1.0, 1.0, rng);
            ds.labels.push_back(c);
        }
    return ds;
}

} // namespace

TEST_CASE("balanced split keeps exact per-class counts") {
    const Dataset ds = balanced_dataset();
    auto rng = refkernel::make_rng(1, "test/split-exact");
    const auto task = refkernel::split_task(ds, TaskSpec{"Synth1", 0}, rng);
    CHECK(task.name == "Synth1");
    CHECK(task.x_train.cols() == 35);
    CHECK(task.x_neg_train.cols() == 70);
    CHECK(task.x_test.cols() == 45);
    REQUIRE(task.y_test.size() == 45);
    std::size_t targets = 0;
    for (int y : task.y_test) targets += static_cast<std::size_t>(y == 1);
    CHECK(targets == 15);
}

TEST_CASE("fractional class sizes round both ways across seeds") {
    Dataset ds;
    ds.name = "Frac";
    ds.class_names = {"a", "b"};
    ds.feature_names = {"f"};
    // 9 + 11 samples: 0.7 * 9 = 6.3 and 0.7 * 11 = 7.7, both fractional.
    ds.features = DenseMatrix(1, 20);
    for (std::size_t j = 0; j < 20; ++j) {
        ds.features(0, j) = static_cast<double>(j);
        ds.labels.push_back(j < 9 ? 0 : 1);
    }
    std::set<std::size_t> seen_a, seen_b;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto rng = refkernel::make_rng(seed, "test/split-frac");
        const auto task = refkernel::split_task(ds, TaskSpec{"Frac1", 0}, rng);
        seen_a.insert(task.x_train.cols());
        seen_b.insert(task.x_neg_train.cols());
        CHECK(task.x_train.cols() >= 6);
        CHECK(task.x_train.cols() <= 7);
        CHECK(task.x_neg_train.cols() >= 7);
        CHECK(task.x_neg_train.cols() <= 8);
        CHECK(task.x_train.cols() + task.x_neg_train.cols() + task.x_test.cols() == 20);
    }
    CHECK(seen_a.size() == 2);
    CHECK(seen_b.size() == 2);
}

TEST_CASE("tiny classes keep one sample on each side") {
    Dataset ds;
    ds.name = "Tiny";
    ds.class_names = {"a", "b"};
    ds.feature_names = {"f"};
    ds.features = DenseMatrix(1, 6);
    for (std::size_t j = 0; j < 6; ++j) {
        ds.features(0, j) = static_cast<double>(j) * 3.0;
        ds.labels.push_back(j < 2 ? 0 : 1);
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto rng = refkernel::make_rng(seed, "test/split-tiny");
        const auto task = refkernel::split_task(ds, TaskSpec{"Tiny1", 0}, rng);
        CHECK(task.x_train.cols() == 1);
        std::size_t test_targets = 0;
        for (int y : task.y_test) test_targets += static_cast<std::size_t>(y == 1);
        CHECK(test_targets == 1);
    }

    ds.labels[1] = 1; // class zero down to one sample
    auto rng = refkernel::make_rng(0, "test/split-tiny");
    CHECK_THROWS_AS(refkernel::split_task(ds, TaskSpec{"Tiny1", 0}, rng),
                    refkernel::InsufficientData);
}

TEST_CASE("standardization uses target training statistics only") {
    const Dataset ds = balanced_dataset();
    auto rng = refkernel::make_rng(5, "test/split-norm");
    const auto task = refkernel::split_task(ds, TaskSpec{"Synth1", 0}, rng);
    for (std::size_t i = 0; i < task.x_train.rows(); ++i) {
        double mean = 0.0;
        for (std::size_t j = 0; j < task.x_train.cols(); ++j) mean += task.x_train(i, j);
        mean /= static_cast<double>(task.x_train.cols());
        double var = 0.0;
        for (std::size_t j = 0; j < task.x_train.cols(); ++j) {
            const double d = task.x_train(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(task.x_train.cols());
        CHECK(std::fabs(mean) <= 1e-12);
        CHECK(std::fabs(var - 1.0) <= 1e-10);
    }
    // Negatives from the far clusters keep a visible offset after the
    // target-based standardization.
    double neg_mean = 0.0;
    for (std::size_t j = 0; j < task.x_neg_train.cols(); ++j)
        neg_mean += task.x_neg_train(0, j);
    neg_mean /= static_cast<double>(task.x_neg_train.cols());
    CHECK(std::fabs(neg_mean) > 1.0);
}

TEST_CASE("splits are deterministic per seed and differ across seeds") {
    const Dataset ds = balanced_dataset();
    auto r1 = refkernel::make_rng(9, "test/split-det");
    auto r2 = refkernel::make_rng(9, "test/split-det");
    const auto a = refkernel::split_task(ds, TaskSpec{"Synth1", 0}, r1);
    const auto b = refkernel::split_task(ds, TaskSpec{"Synth1", 0}, r2);
    CHECK(refkernel::max_abs_diff(a.x_train, b.x_train) == 0.0);
    CHECK(refkernel::max_abs_diff(a.x_test, b.x_test) == 0.0);
    auto r3 = refkernel::make_rng(10, "test/split-det");
    const auto c = refkernel::split_task(ds, TaskSpec{"Synth1", 0}, r3);
    CHECK(refkernel::max_abs_diff(a.x_train, c.x_train) > 0.0);
}

TEST_CASE("geometric mean of class rates") {
    using refkernel::gmean_percent;
    CHECK(gmean_percent({1, 1, 0, 0}, {1, 1, 0, 0}) == doctest::Approx(100.0));
    CHECK(gmean_percent({1, 1, 0, 0}, {1, 0, 0, 1}) == doctest::Approx(50.0));
    CHECK(gmean_percent({1, 1, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.0));
    // TPR 1, TNR 1/2: 100 sqrt(0.5)
    CHECK(gmean_percent({1, 0, 0}, {1, 1, 0}) ==
          doctest::Approx(100.0 * std::sqrt(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(gmean_percent({1, 1}, {1, 0}), refkernel::UndefinedMetric);
    CHECK_THROWS_AS(gmean_percent({0, 0}, {1, 0}), refkernel::UndefinedMetric);
    CHECK_THROWS_AS(gmean_percent({1, 0}, {1}), refkernel::InvalidShape);
}
