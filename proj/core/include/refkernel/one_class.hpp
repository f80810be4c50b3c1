#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "refkernel/dense_matrix.hpp"
#include "refkernel/reference.hpp"

namespace refkernel {

struct SmoOptions {
    // Stop when the maximal pair violation is below kkt_tol. Interior support
    // vectors can score up to kkt_tol away from the recovered threshold, so the
    // default sits an order below the 1e-8 slack the fraction bounds use.
    double kkt_tol = 1e-9;
    std::size_t max_iter = 100000;
};

/// Minimum-enclosing-ball description boundary fit on a precomputed kernel.
/// Dual: max sum_i alpha_i K_ii - alpha^T K alpha with 0 <= alpha <= C and
/// sum alpha = 1. score(z) = r_squared - ||phi(z) - center||^2, ties count
/// as target.
struct SvddModel {
    std::vector<double> alpha;
    std::vector<std::size_t> support_idx; // indices with alpha > 0
    double c = 0.0;
    double r_squared = 0.0;      // squared boundary radius, clamped at 0
    double center_norm_sq = 0.0; // alpha^T K alpha
    double kkt_gap = 0.0;        // pair violation at the final iterate
    std::size_t iterations = 0;
};

struct Decision {
    double score = 0.0;
    bool is_target = false;
};

// Throws InfeasibleC when C < 1/N, InvalidKernel when K is unusable
// (asymmetric, non-square, or indefinite beyond tolerance).
SvddModel svdd_fit(const DenseMatrix& k, double c, const SmoOptions& opts = {});

// k_xz holds kernel values between the N training samples and z, k_zz is
// kernel(z, z).
Decision svdd_decide(const SvddModel& model, std::span<const double> k_xz, double k_zz);

/// One-class separating hyperplane fit on a precomputed kernel.
/// Dual: min (1/2) alpha^T K alpha with 0 <= alpha <= 1/(nu N) and
/// sum alpha = 1. score(z) = alpha^T k_xz - rho, ties count as target.
struct OcsvmModel {
    std::vector<double> alpha;
    std::vector<std::size_t> support_idx;
    double nu = 0.0;
    double rho = 0.0;
    double kkt_gap = 0.0;
    std::size_t iterations = 0;
};

// Throws InfeasibleNu when nu is outside (0, 1] or nu * N < 1.
OcsvmModel ocsvm_fit(const DenseMatrix& k, double nu, const SmoOptions& opts = {});

Decision ocsvm_decide(const OcsvmModel& model, std::span<const double> k_xz);

// Gram matrix of a feature block, K = F^T F. The bridge from the explicit
// mapping route to the precomputed-kernel solvers.
DenseMatrix gram_from_features(const FeatureBlock& f);

SvddModel svdd_fit_features(const FeatureBlock& f, double c, const SmoOptions& opts = {});
OcsvmModel ocsvm_fit_features(const FeatureBlock& f, double nu, const SmoOptions& opts = {});

} // namespace refkernel
