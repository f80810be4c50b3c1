#include "refkernel/kernel.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

BaseKernelSpec BaseKernelSpec::rbf(double sigma) {
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw InvalidKernel("rbf bandwidth must be finite and positive, got " +
                            std::to_string(sigma));
    }
    return {KernelKind::rbf, sigma};
}

BaseKernelSpec BaseKernelSpec::linear() { return {KernelKind::linear, 1.0}; }

double kernel_eval(const BaseKernelSpec& spec, std::span<const double> x,
                   std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidShape("kernel arguments differ in dimension: " + std::to_string(x.size()) +
                           " vs " + std::to_string(y.size()));
    }
    if (spec.kind == KernelKind::linear) {
        double dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
        return dot;
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        d2 += d * d;
    }
    return std::exp(-d2 / (2.0 * spec.sigma * spec.sigma));
}

DenseMatrix kernel_matrix(const BaseKernelSpec& spec, const DenseMatrix& a,
                          const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw InvalidShape("kernel_matrix sample dimensions disagree: " +
                           std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
    }
    DenseMatrix k(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto y = b.col(j);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            k(i, j) = kernel_eval(spec, a.col(i), y);
        }
    }
    return k;
}

std::pair<DenseMatrix, CenteringContext> center_reference_kernel(const DenseMatrix& k_rr) {
    if (k_rr.cols() == 0 || k_rr.rows() == 0) {
        throw EmptyReferenceSet("cannot center a kernel over zero references");
    }
    if (k_rr.rows() != k_rr.cols()) {
        throw InvalidMatrix("reference kernel must be square, got " +
                            std::to_string(k_rr.rows()) + "x" + std::to_string(k_rr.cols()));
    }
    const std::size_t m = k_rr.rows();

    CenteringContext ctx;
    ctx.reference_count = m;
    ctx.column_means.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += k_rr(i, j);
        ctx.column_means[j] = s / static_cast<double>(m);
    }
    double g = 0.0;
    for (double mu : ctx.column_means) g += mu;
    ctx.grand_mean = g / static_cast<double>(m);

    // Kernel matrices of a set with itself are symmetric, so the column means
    // double as the row means needed on the left.
    DenseMatrix centered(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            centered(i, j) = k_rr(i, j) - ctx.column_means[i] - ctx.column_means[j] +
                             ctx.grand_mean;
    return {std::move(centered), std::move(ctx)};
}

DenseMatrix center_cross_kernel(const CenteringContext& ctx, const DenseMatrix& k_rx) {
    if (k_rx.rows() != ctx.reference_count) {
        throw InvalidShape("cross kernel has " + std::to_string(k_rx.rows()) +
                           " rows, centering context expects " +
                           std::to_string(ctx.reference_count));
    }
    const std::size_t m = k_rx.rows();
    const std::size_t n = k_rx.cols();
    DenseMatrix centered(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        double col_mean = 0.0;
        for (std::size_t i = 0; i < m; ++i) col_mean += k_rx(i, j);
        col_mean /= static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) {
            centered(i, j) = k_rx(i, j) - ctx.column_means[i] - col_mean + ctx.grand_mean;
        }
    }
    return centered;
}

double sigma_from_scale(const DenseMatrix& x_train, double s) {
    assert(std::isfinite(s) && s > 0.0);
    const std::size_t n = x_train.cols();
    if (n < 2) {
        throw InsufficientData("bandwidth rule needs at least two training samples, got " +
                               std::to_string(n));
    }
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto xj = x_train.col(j);
        for (std::size_t i = j + 1; i < n; ++i) {
            const auto xi = x_train.col(i);
            double d2 = 0.0;
            for (std::size_t t = 0; t < xi.size(); ++t) {
                const double d = xi[t] - xj[t];
                d2 += d * d;
            }
            total += d2;
        }
    }
    // Ordered pairs double the unordered sum and the pair count, so d_aver is
    // the unordered mean as well.
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double d_aver = total / pairs;
    if (d_aver <= 0.0) {
        throw DegenerateData("all training samples coincide; mean pairwise distance is zero");
    }
    return std::sqrt(s * d_aver);
}

} // namespace refkernel
