#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "refkernel/dense_matrix.hpp"

namespace refkernel {

enum class KernelKind { rbf, linear };

/// Base kernel specification. rbf evaluates exp(-||x - y||^2 / (2 sigma^2)),
/// linear evaluates x . y.
struct BaseKernelSpec {
    KernelKind kind = KernelKind::rbf;
    double sigma = 1.0; // used by rbf only; must be finite and > 0

    static BaseKernelSpec rbf(double sigma);
    static BaseKernelSpec linear();
};

// Throws InvalidShape when x and y differ in length.
double kernel_eval(const BaseKernelSpec& spec, std::span<const double> x,
                   std::span<const double> y);

// Entry (i, j) is kernel(a column i, b column j); a is D x n, b is D x m,
// result n x m. Row counts must agree.
DenseMatrix kernel_matrix(const BaseKernelSpec& spec, const DenseMatrix& a,
                          const DenseMatrix& b);

/// Statistics of an uncentered reference kernel matrix K_RR, retained so new
/// samples can be centered consistently with the reference block.
struct CenteringContext {
    std::size_t reference_count = 0;   // M
    std::vector<double> column_means;  // per-column means of K_RR, length M
    double grand_mean = 0.0;           // mean over all entries of K_RR
};

// Double-centers K_RR (M x M, M >= 1): output(i,j) = K(i,j) - mu_i - mu_j + g,
// equal to C_M K C_M with C_M = I - (1/M) 1 1^T. Throws EmptyReferenceSet for
// M = 0, InvalidMatrix for non-square input.
std::pair<DenseMatrix, CenteringContext> center_reference_kernel(const DenseMatrix& k_rr);

// Centers a cross kernel K_RX (M x n) against the reference block:
// output(i,j) = K(i,j) - mu_i - colmean_j(K_RX) + g. Every output column then
// sums to zero up to roundoff. Row count must equal ctx.reference_count.
DenseMatrix center_cross_kernel(const CenteringContext& ctx, const DenseMatrix& k_rx);

// Bandwidth rule sigma = sqrt(s * d_aver) where d_aver is the mean squared
// distance over ordered pairs of distinct training columns. Throws
// InsufficientData for fewer than two columns, DegenerateData when all
// columns coincide. s must be > 0.
double sigma_from_scale(const DenseMatrix& x_train, double s);

} // namespace refkernel
