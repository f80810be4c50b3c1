#include "refkernel/reference.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

std::atomic<std::uint64_t> next_model_id{1};

std::size_t augmentation_count(const DenseMatrix& x, const DenseMatrix* x_neg) {
    // T = min(N, N_neg); with no negative pool the matched choice T = N.
    const std::size_t n = x.cols();
    if (x_neg == nullptr || x_neg->cols() == 0) return n;
    return std::min(n, x_neg->cols());
}

} // namespace

const char* reference_case_label(ReferenceCase c) {
    switch (c) {
        case ReferenceCase::training: return "1";
        case ReferenceCase::gaussian_matched: return "2";
        case ReferenceCase::training_subsample: return "3";
        case ReferenceCase::gaussian_half: return "4";
        case ReferenceCase::negatives_augmented: return "5";
        case ReferenceCase::gaussian_augmented: return "6";
        case ReferenceCase::gaussian_extended: return "7";
    }
    throw Error("unreachable reference case");
}

ReferenceCase reference_case_from_label(const std::string& label) {
    if (label.size() == 1 && label[0] >= '1' && label[0] <= '7') {
        return static_cast<ReferenceCase>(label[0] - '0');
    }
    throw FormatError("unknown reference case label: " + label);
}

DenseMatrix select_references(ReferenceCase c, const DenseMatrix& x,
                              const DenseMatrix* x_neg, Rng& rng) {
    const std::size_t d = x.rows();
    const std::size_t n = x.cols();
    if (n == 0) throw EmptyReferenceSet("training set is empty");

    switch (c) {
        case ReferenceCase::training:
            return x;
        case ReferenceCase::gaussian_matched:
            return standard_normal_matrix(d, n, rng);
        case ReferenceCase::training_subsample: {
            if (n < 2) {
                throw InsufficientData("subsampled references need at least two "
                                       "training samples");
            }
            return x.select_columns(sample_without_replacement(n, n / 2, rng));
        }
        case ReferenceCase::gaussian_half:
            if (n < 2) {
                throw InsufficientData("half-size reference draw needs at least two "
                                       "training samples");
            }
            return standard_normal_matrix(d, n / 2, rng);
        case ReferenceCase::negatives_augmented: {
            if (x_neg == nullptr || x_neg->cols() == 0) {
                throw MissingNegatives("reference case 5 needs a negative sample pool");
            }
            const std::size_t t = std::min(n, x_neg->cols());
            auto order = shuffled_indices(x_neg->cols(), rng);
            order.resize(t);
            return DenseMatrix::hcat(x, x_neg->select_columns(order));
        }
        case ReferenceCase::gaussian_augmented: {
            const std::size_t t = augmentation_count(x, x_neg);
            return DenseMatrix::hcat(x, standard_normal_matrix(d, t, rng));
        }
        case ReferenceCase::gaussian_extended: {
            const std::size_t t = augmentation_count(x, x_neg);
            return standard_normal_matrix(d, n + t, rng);
        }
    }
    throw Error("unreachable reference case");
}

ReferenceModel fit_reference(const DenseMatrix& references, const BaseKernelSpec& base,
                             double tol) {
    if (references.cols() == 0) {
        throw EmptyReferenceSet("cannot fit a reference model on zero references");
    }
    const DenseMatrix k_rr = kernel_matrix(base, references, references);
    auto [centered, ctx] = center_reference_kernel(k_rr);
    const EigenDecomposition full = sym_eig(centered);
    EigenDecomposition kept = truncate_spectrum(full, tol);
    if (kept.eigenvalues.empty()) {
        throw DegenerateReferenceSet("centered reference kernel has no eigenvalue >= " +
                                     std::to_string(tol));
    }

    ReferenceModel model;
    model.references = references;
    model.base = base;
    model.centering = std::move(ctx);
    model.eigenvectors = std::move(kept.eigenvectors);
    model.eigenvalues = std::move(kept.eigenvalues);
    model.tol = tol;
    model.id = next_model_id.fetch_add(1);

    // Truncated pseudo-inverse of the centered K_RR, materialized once so the
    // kernel route below never touches the feature map.
    const std::size_t m = model.reference_count();
    const std::size_t r = model.rank();
    model.pseudo_inverse = DenseMatrix(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t t = 0; t < r; ++t) {
                s += model.eigenvectors(i, t) * model.eigenvectors(j, t) /
                     model.eigenvalues[t];
            }
            model.pseudo_inverse(i, j) = s;
        }
    }
    return model;
}

FeatureBlock map_samples(const ReferenceModel& model, const DenseMatrix& x) {
    if (x.rows() != model.references.rows()) {
        throw InvalidShape("sample dimension " + std::to_string(x.rows()) +
                           " does not match reference dimension " +
                           std::to_string(model.references.rows()));
    }
    const DenseMatrix cross = kernel_matrix(model.base, model.references, x);
    const DenseMatrix centered = center_cross_kernel(model.centering, cross);

    const std::size_t r = model.rank();
    const std::size_t m = model.reference_count();
    const std::size_t n = x.cols();
    FeatureBlock block;
    block.features = DenseMatrix(r, n);
    block.origin_id = model.id;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < r; ++t) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                s += model.eigenvectors(i, t) * centered(i, j);
            }
            block.features(t, j) = s / std::sqrt(model.eigenvalues[t]);
        }
    }
    return block;
}

DenseMatrix ref_kernel_matrix(const ReferenceModel& model, const DenseMatrix& a,
                              const DenseMatrix& b) {
    if (a.rows() != model.references.rows() || b.rows() != model.references.rows()) {
        throw InvalidShape("sample dimension does not match reference dimension " +
                           std::to_string(model.references.rows()));
    }
    const DenseMatrix ka = center_cross_kernel(
        model.centering, kernel_matrix(model.base, model.references, a));
    const DenseMatrix kb = center_cross_kernel(
        model.centering, kernel_matrix(model.base, model.references, b));
    return matmul(ka.transpose(), matmul(model.pseudo_inverse, kb));
}

std::pair<FeatureBlock, ReferenceModel> npt_fit(const DenseMatrix& x,
                                                const BaseKernelSpec& base, double tol) {
    ReferenceModel model = fit_reference(x, base, tol);
    const std::size_t r = model.rank();
    const std::size_t n = x.cols();
    FeatureBlock block;
    block.features = DenseMatrix(r, n);
    block.origin_id = model.id;
    // Training features come straight from the eigensystem of the centered
    // kernel: row t is sqrt(lambda_t) times eigenvector t.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < r; ++t) {
            block.features(t, j) = std::sqrt(model.eigenvalues[t]) * model.eigenvectors(j, t);
        }
    }
    return {std::move(block), std::move(model)};
}

FeatureBlock npt_map_test(const ReferenceModel& model, const DenseMatrix& x) {
    return map_samples(model, x);
}

} // namespace refkernel
