#pragma once

#include <vector>

#include "refkernel/dense_matrix.hpp"

namespace refkernel {

/// Per-feature affine normalization learned from a training block.
struct NormStats {
    std::vector<double> mean;
    std::vector<double> stddev; // population std; exact zeros are stored as 1

    static NormStats identity(std::size_t dim);
};

// Feature-wise mean and population standard deviation over the columns of
// train. A feature with zero spread gets stddev 1 so it passes through
// centered but unscaled.
NormStats compute_norm_stats(const DenseMatrix& train);

// (x - mean) / stddev per feature. Row count must match the stats dimension.
DenseMatrix apply_norm(const NormStats& stats, const DenseMatrix& x);

} // namespace refkernel
