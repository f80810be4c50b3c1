#include "refkernel/one_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

constexpr double kSymmetryTol = 1e-8;
constexpr double kIndefiniteTol = 1e-8;

void validate_gram(const DenseMatrix& k) {
    if (k.rows() != k.cols()) {
        throw InvalidKernel("kernel matrix must be square, got " + std::to_string(k.rows()) +
                            "x" + std::to_string(k.cols()));
    }
    const std::size_t n = k.rows();
    if (n == 0) throw InsufficientData("cannot fit on an empty kernel matrix");
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(k(i, i)));
    for (std::size_t j = 0; j < n; ++j) {
        if (k(j, j) < -kIndefiniteTol * scale) {
            throw InvalidKernel("kernel diagonal entry " + std::to_string(j) +
                                " is negative beyond tolerance");
        }
        for (std::size_t i = j + 1; i < n; ++i) {
            if (std::fabs(k(i, j) - k(j, i)) > kSymmetryTol * scale) {
                throw InvalidKernel("kernel matrix is asymmetric beyond tolerance");
            }
        }
    }
}

// State of the shared working-pair descent for
//   min f(alpha) = (qscale/2) alpha^T K alpha + p^T alpha
//   s.t. sum alpha = 1, 0 <= alpha_i <= upper.
// Gradient g = qscale K alpha + p is kept incrementally. A pair step moves
// mass delta from j to i, which preserves the simplex constraint exactly.
struct SolveResult {
    std::vector<double> alpha;
    std::vector<double> grad;
    double kkt_gap = 0.0;
    std::size_t iterations = 0;
};

SolveResult solve_pairwise(const DenseMatrix& k, double qscale, const std::vector<double>& p,
                           double upper, const SmoOptions& opts) {
    const std::size_t n = k.rows();
    const double inv_n = 1.0 / static_cast<double>(n);

    SolveResult r;
    r.alpha.assign(n, inv_n);
    r.grad.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double aj = r.alpha[j];
        for (std::size_t i = 0; i < n; ++i) r.grad[i] += qscale * k(i, j) * aj;
    }
    for (std::size_t i = 0; i < n; ++i) r.grad[i] += p[i];

    double diag_scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::fabs(k(i, i)));
    const double curvature_floor = 1e-12 * qscale * diag_scale;
    const double indefinite_floor = -kIndefiniteTol * qscale * diag_scale;

    while (r.iterations < opts.max_iter) {
        // Maximal-violating pair: the steepest feasible descent direction
        // e_i - e_j needs alpha_i below the box and alpha_j above zero.
        std::size_t up = n, down = n;
        double g_up = std::numeric_limits<double>::infinity();
        double g_down = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (r.alpha[i] < upper && r.grad[i] < g_up) {
                g_up = r.grad[i];
                up = i;
            }
            if (r.alpha[i] > 0.0 && r.grad[i] > g_down) {
                g_down = r.grad[i];
                down = i;
            }
        }
        r.kkt_gap = (up < n && down < n) ? g_down - g_up : 0.0;
        if (r.kkt_gap <= opts.kkt_tol) break;

        const double quad = qscale * (k(up, up) + k(down, down) - 2.0 * k(up, down));
        if (quad < indefinite_floor) {
            throw InvalidKernel("kernel matrix is indefinite beyond tolerance "
                                "(negative pair curvature)");
        }
        const double room_up = upper - r.alpha[up];
        const double room_down = r.alpha[down];
        double step = std::min(room_up, room_down);
        if (quad > curvature_floor) {
            step = std::min(step, r.kkt_gap / quad);
        }

        r.alpha[up] += step;
        r.alpha[down] -= step;
        // Land exactly on the box when the step was clipped by it, so bound
        // membership tests below stay exact.
        if (step == room_up) r.alpha[up] = upper;
        if (step == room_down) r.alpha[down] = 0.0;

        for (std::size_t i = 0; i < n; ++i) {
            r.grad[i] += step * qscale * (k(i, up) - k(i, down));
        }
        ++r.iterations;
    }
    return r;
}

// Equality multiplier recovered from the gradient. Interior coordinates pin
// it exactly; with none, the bound conditions bracket it and the midpoint of
// the bracket is used.
double equality_multiplier(const SolveResult& r, double upper) {
    double interior_sum = 0.0;
    std::size_t interior_count = 0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.alpha.size(); ++i) {
        const double a = r.alpha[i];
        if (a > 0.0 && a < upper) {
            interior_sum += r.grad[i];
            ++interior_count;
        } else if (a >= upper) {
            lo = std::max(lo, r.grad[i]);
        } else {
            hi = std::min(hi, r.grad[i]);
        }
    }
    if (interior_count > 0) return interior_sum / static_cast<double>(interior_count);
    if (std::isinf(lo)) return hi;
    if (std::isinf(hi)) return lo;
    return 0.5 * (lo + hi);
}

std::vector<std::size_t> positive_indices(const std::vector<double>& alpha) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] > 0.0) idx.push_back(i);
    }
    return idx;
}

} // namespace

SvddModel svdd_fit(const DenseMatrix& k, double c, const SmoOptions& opts) {
    validate_gram(k);
    const std::size_t n = k.rows();
    if (!(c > 0.0) || c * static_cast<double>(n) < 1.0) {
        throw InfeasibleC("C = " + std::to_string(c) + " leaves no feasible point for N = " +
                          std::to_string(n));
    }

    // min alpha^T K alpha - sum_i alpha_i K_ii, the negated description dual.
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = -k(i, i);
    SolveResult r = solve_pairwise(k, 2.0, p, c, opts);

    SvddModel model;
    model.c = c;
    model.kkt_gap = r.kkt_gap;
    model.iterations = r.iterations;
    model.support_idx = positive_indices(r.alpha);

    // g_i = 2 (K alpha)_i - K_ii, so alpha^T (g - p) / 2 = alpha^T K alpha.
    double cn = 0.0;
    for (std::size_t i = 0; i < n; ++i) cn += r.alpha[i] * (r.grad[i] - p[i]);
    model.center_norm_sq = 0.5 * cn;

    // Boundary samples satisfy ||phi(x_i) - center||^2 = center_norm_sq - g_i,
    // so the multiplier yields the squared radius directly.
    model.r_squared = std::max(0.0, model.center_norm_sq - equality_multiplier(r, c));
    model.alpha = std::move(r.alpha);
    return model;
}

Decision svdd_decide(const SvddModel& model, std::span<const double> k_xz, double k_zz) {
    if (k_xz.size() != model.alpha.size()) {
        throw InvalidShape("expected " + std::to_string(model.alpha.size()) +
                           " kernel values, got " + std::to_string(k_xz.size()));
    }
    double cross = 0.0;
    for (std::size_t i = 0; i < k_xz.size(); ++i) cross += model.alpha[i] * k_xz[i];
    const double dist_sq = k_zz - 2.0 * cross + model.center_norm_sq;
    Decision d;
    d.score = model.r_squared - dist_sq;
    d.is_target = d.score >= 0.0;
    return d;
}

OcsvmModel ocsvm_fit(const DenseMatrix& k, double nu, const SmoOptions& opts) {
    validate_gram(k);
    const std::size_t n = k.rows();
    if (!(nu > 0.0) || nu > 1.0 || nu * static_cast<double>(n) < 1.0) {
        throw InfeasibleNu("nu = " + std::to_string(nu) + " leaves no feasible point for N = " +
                           std::to_string(n));
    }
    const double upper = 1.0 / (nu * static_cast<double>(n));

    const std::vector<double> p(n, 0.0);
    SolveResult r = solve_pairwise(k, 1.0, p, upper, opts);

    OcsvmModel model;
    model.nu = nu;
    model.kkt_gap = r.kkt_gap;
    model.iterations = r.iterations;
    model.support_idx = positive_indices(r.alpha);
    // g = K alpha, and interior samples sit on the separating hyperplane.
    model.rho = equality_multiplier(r, upper);
    model.alpha = std::move(r.alpha);
    return model;
}

Decision ocsvm_decide(const OcsvmModel& model, std::span<const double> k_xz) {
    if (k_xz.size() != model.alpha.size()) {
        throw InvalidShape("expected " + std::to_string(model.alpha.size()) +
                           " kernel values, got " + std::to_string(k_xz.size()));
    }
    double cross = 0.0;
    for (std::size_t i = 0; i < k_xz.size(); ++i) cross += model.alpha[i] * k_xz[i];
    Decision d;
    d.score = cross - model.rho;
    d.is_target = d.score >= 0.0;
    return d;
}

DenseMatrix gram_from_features(const FeatureBlock& f) {
    return matmul(f.features.transpose(), f.features);
}

SvddModel svdd_fit_features(const FeatureBlock& f, double c, const SmoOptions& opts) {
    return svdd_fit(gram_from_features(f), c, opts);
}

OcsvmModel ocsvm_fit_features(const FeatureBlock& f, double nu, const SmoOptions& opts) {
    return ocsvm_fit(gram_from_features(f), nu, opts);
}

} // namespace refkernel
