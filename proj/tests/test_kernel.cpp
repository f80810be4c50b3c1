#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "refkernel/dense_matrix.hpp"
#include "refkernel/eigen.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/kernel.hpp"
#include "refkernel/rng.hpp"

using refkernel::BaseKernelSpec;
using refkernel::DenseMatrix;

TEST_CASE("gaussian kernel of a point with itself is one") {
    const DenseMatrix x = DenseMatrix::from_rows({{1.5}, {-2.0}, {0.25}});
    const auto spec = BaseKernelSpec::rbf(0.7);
    CHECK(refkernel::kernel_eval(spec, x.col(0), x.col(0)) == 1.0);
}

TEST_CASE("gaussian kernel closed form at unit bandwidth") {
    // Squared distance 2 at sigma 1 gives exp(-1).
    const DenseMatrix a = DenseMatrix::from_rows({{0.0}, {0.0}});
    const DenseMatrix b = DenseMatrix::from_rows({{1.0}, {1.0}});
    const auto spec = BaseKernelSpec::rbf(1.0);
    CHECK(refkernel::kernel_eval(spec, a.col(0), b.col(0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("linear kernel is the dot product") {
    const DenseMatrix a = DenseMatrix::from_rows({{1.0}, {2.0}});
    const DenseMatrix b = DenseMatrix::from_rows({{3.0}, {-1.0}});
    BaseKernelSpec spec;
    spec.kind = refkernel::KernelKind::linear;
    CHECK(refkernel::kernel_eval(spec, a.col(0), b.col(0)) == 1.0);
}

TEST_CASE("bandwidth validation") {
    CHECK_THROWS_AS(BaseKernelSpec::rbf(0.0), refkernel::InvalidKernel);
    CHECK_THROWS_AS(BaseKernelSpec::rbf(-1.0), refkernel::InvalidKernel);
    CHECK_THROWS_AS(BaseKernelSpec::rbf(std::nan("")), refkernel::InvalidKernel);
}

TEST_CASE("kernel_matrix matches the entrywise oracle") {
    auto rng = refkernel::make_rng(21, "test/kernel-matrix");
    const DenseMatrix a = refkernel::standard_normal_matrix(3, 6, rng);
    const DenseMatrix b = refkernel::standard_normal_matrix(3, 4, rng);
    const auto spec = BaseKernelSpec::rbf(1.3);
    const DenseMatrix k = refkernel::kernel_matrix(spec, a, b);
    CHECK(k.rows() == 6);
    CHECK(k.cols() == 4);
    CHECK(refkernel::max_abs_diff(k, oracle::rbf_matrix(a, b, 1.3)) <= 1e-15);

    CHECK_THROWS_AS(refkernel::kernel_matrix(spec, a, DenseMatrix(2, 4)),
                    refkernel::InvalidShape);
    CHECK(refkernel::kernel_matrix(spec, a, DenseMatrix(3, 0)).cols() == 0);
}

TEST_CASE("gaussian kernel matrix on a sample set is positive semidefinite") {
    auto rng = refkernel::make_rng(22, "test/kernel-psd");
    const DenseMatrix x = refkernel::standard_normal_matrix(4, 12, rng);
    const auto spec = BaseKernelSpec::rbf(0.9);
    const DenseMatrix k = refkernel::kernel_matrix(spec, x, x);
    const auto eig = refkernel::sym_eig(k);
    for (double v : eig.eigenvalues) CHECK(v >= -1e-9);
}

TEST_CASE("reference-block centering matches the materialized product") {
    auto rng = refkernel::make_rng(23, "test/centering");
    const DenseMatrix x = refkernel::standard_normal_matrix(3, 7, rng);
    const auto spec = BaseKernelSpec::rbf(1.1);
    const DenseMatrix k = refkernel::kernel_matrix(spec, x, x);
    auto [centered, ctx] = refkernel::center_reference_kernel(k);
    CHECK(refkernel::max_abs_diff(centered, oracle::center_rr_materialized(k)) <= 1e-12);
    CHECK(ctx.reference_count == 7);

    // Rows and columns of the centered block sum to zero.
    for (std::size_t i = 0; i < 7; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < 7; ++j) {
            row += centered(i, j);
            col += centered(j, i);
        }
        CHECK(std::fabs(row) <= 1e-10 * 7);
        CHECK(std::fabs(col) <= 1e-10 * 7);
    }

    // Context carries the original column means and the grand mean.
    for (std::size_t j = 0; j < 7; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < 7; ++i) mean += k(i, j);
        mean /= 7.0;
        CHECK(ctx.column_means[j] == doctest::Approx(mean).epsilon(1e-15));
    }
}

TEST_CASE("centering validation") {
    CHECK_THROWS_AS(refkernel::center_reference_kernel(DenseMatrix(0, 0)),
                    refkernel::EmptyReferenceSet);
    CHECK_THROWS_AS(refkernel::center_reference_kernel(DenseMatrix(2, 3)),
                    refkernel::InvalidMatrix);
}

TEST_CASE("cross-block centering matches the materialized product") {
    auto rng = refkernel::make_rng(24, "test/cross-centering");
    const DenseMatrix r = refkernel::standard_normal_matrix(3, 6, rng);
    const DenseMatrix x = refkernel::standard_normal_matrix(3, 4, rng);
    const auto spec = BaseKernelSpec::rbf(0.8);
    const DenseMatrix k_rr = refkernel::kernel_matrix(spec, r, r);
    const DenseMatrix k_rx = refkernel::kernel_matrix(spec, r, x);
    auto [centered_rr, ctx] = refkernel::center_reference_kernel(k_rr);
    const DenseMatrix got = refkernel::center_cross_kernel(ctx, k_rx);
    CHECK(refkernel::max_abs_diff(got, oracle::center_rx_materialized(k_rr, k_rx)) <= 1e-12);

    // Columns of the centered cross block sum to zero.
    for (std::size_t j = 0; j < 4; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < 6; ++i) col += got(i, j);
        CHECK(std::fabs(col) <= 1e-10 * 6);
    }

    // Centering the reference block itself through the cross path agrees
    // with the symmetric route.
    const DenseMatrix self = refkernel::center_cross_kernel(ctx, k_rr);
    CHECK(refkernel::max_abs_diff(self, centered_rr) <= 1e-12);

    CHECK_THROWS_AS(refkernel::center_cross_kernel(ctx, DenseMatrix(5, 4)),
                    refkernel::InvalidShape);
}

TEST_CASE("bandwidth from scale, closed form") {
    // Two points with squared distance 2: mean squared distance is 2, so
    // scale 1 gives sqrt(2) and scale 4 doubles it.
    const DenseMatrix x = DenseMatrix::from_rows({{0.0, 1.0}, {0.0, 1.0}});
    CHECK(refkernel::sigma_from_scale(x, 1.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(refkernel::sigma_from_scale(x, 4.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("bandwidth from scale matches the pairwise oracle") {
    auto rng = refkernel::make_rng(25, "test/sigma");
    const DenseMatrix x = refkernel::standard_normal_matrix(5, 9, rng);
    const double expect = std::sqrt(10.0 * oracle::mean_squared_distance(x));
    CHECK(refkernel::sigma_from_scale(x, 10.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("bandwidth from scale validation") {
    CHECK_THROWS_AS(refkernel::sigma_from_scale(DenseMatrix(2, 1), 1.0),
                    refkernel::InsufficientData);
    const DenseMatrix same = DenseMatrix::from_rows({{1.0, 1.0}, {2.0, 2.0}});
    CHECK_THROWS_AS(refkernel::sigma_from_scale(same, 1.0), refkernel::DegenerateData);
}
