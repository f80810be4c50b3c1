#include "refkernel/standardize.hpp"

#include <cmath>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

NormStats NormStats::identity(std::size_t dim) {
    NormStats s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 1.0);
    return s;
}

NormStats compute_norm_stats(const DenseMatrix& train) {
    const std::size_t d = train.rows();
    const std::size_t n = train.cols();
    if (n == 0) throw InsufficientData("cannot standardize from an empty training block");

    NormStats stats;
    stats.mean.assign(d, 0.0);
    stats.stddev.assign(d, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < d; ++i) stats.mean[i] += train(i, j);
    for (std::size_t i = 0; i < d; ++i) stats.mean[i] /= static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            const double delta = train(i, j) - stats.mean[i];
            stats.stddev[i] += delta * delta;
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        stats.stddev[i] = std::sqrt(stats.stddev[i] / static_cast<double>(n));
        if (stats.stddev[i] == 0.0) stats.stddev[i] = 1.0;
    }
    return stats;
}

DenseMatrix apply_norm(const NormStats& stats, const DenseMatrix& x) {
    if (x.rows() != stats.mean.size()) {
        throw InvalidShape("normalization dimension " + std::to_string(stats.mean.size()) +
                           " does not match sample dimension " + std::to_string(x.rows()));
    }
    DenseMatrix out(x.rows(), x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i)
            out(i, j) = (x(i, j) - stats.mean[i]) / stats.stddev[i];
    return out;
}

} // namespace refkernel
