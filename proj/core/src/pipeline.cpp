#include "refkernel/pipeline.hpp"

#include <cmath>
#include <string>

#include "refkernel/eigen.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/kernel.hpp"

namespace refkernel {

const char* method_label(Method m) { return m == Method::svdd ? "svdd" : "ocsvm"; }

const char* path_label(PathKind p) { return p == PathKind::kernel ? "kernel" : "mapping"; }

Method method_from_label(const std::string& s) {
    if (s == "svdd") return Method::svdd;
    if (s == "ocsvm") return Method::ocsvm;
    throw FormatError("unknown method: " + s);
}

PathKind path_from_label(const std::string& s) {
    if (s == "kernel") return PathKind::kernel;
    if (s == "mapping") return PathKind::mapping;
    throw FormatError("unknown path: " + s);
}

std::string case_label(const std::optional<ReferenceCase>& c) {
    return c ? reference_case_label(*c) : "base";
}

std::optional<ReferenceCase> case_from_label(const std::string& s) {
    if (s == "base") return std::nullopt;
    return reference_case_from_label(s);
}

BaseKernelSpec ModelSpec::base() const {
    return kernel == KernelKind::rbf ? BaseKernelSpec::rbf(sigma) : BaseKernelSpec::linear();
}

namespace {

// Rank of the plain base-kernel path: eigenvalues of the uncentered training
// Gram matrix at or above the cutoff.
std::size_t base_kernel_rank(const DenseMatrix& k, double tol) {
    const EigenDecomposition eig = sym_eig(k);
    std::size_t r = 0;
    for (double v : eig.eigenvalues) {
        if (v >= tol) ++r;
    }
    return r;
}

void attach_solver_state(OneClassModel& model, const DenseMatrix& k) {
    if (model.spec.method == Method::svdd) {
        SvddModel fit = svdd_fit(k, model.spec.hyper, model.spec.smo);
        model.alpha = std::move(fit.alpha);
        model.support_idx = std::move(fit.support_idx);
        model.threshold = fit.r_squared;
        model.center_norm_sq = fit.center_norm_sq;
        model.kkt_gap = fit.kkt_gap;
        model.iterations = fit.iterations;
    } else {
        OcsvmModel fit = ocsvm_fit(k, model.spec.hyper, model.spec.smo);
        model.alpha = std::move(fit.alpha);
        model.support_idx = std::move(fit.support_idx);
        model.threshold = fit.rho;
        model.center_norm_sq = 0.0;
        model.kkt_gap = fit.kkt_gap;
        model.iterations = fit.iterations;
    }
}

// Diagonal of the reference kernel of a sample block with itself, along the
// kernel route (centered cross kernel joined through the pseudo-inverse).
std::vector<double> ref_kernel_diag(const ReferenceModel& ref, const DenseMatrix& z) {
    const DenseMatrix cz =
        center_cross_kernel(ref.centering, kernel_matrix(ref.base, ref.references, z));
    const DenseMatrix w = matmul(ref.pseudo_inverse, cz);
    std::vector<double> diag(z.cols(), 0.0);
    for (std::size_t j = 0; j < z.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < cz.rows(); ++i) s += cz(i, j) * w(i, j);
        diag[j] = s;
    }
    return diag;
}

} // namespace

OneClassModel fit_one_class(const ModelSpec& spec, const DenseMatrix& x_train,
                            const DenseMatrix* x_neg, Rng& rng, const NormStats& norm) {
    OneClassModel model;
    model.spec = spec;
    model.train = x_train;
    model.norm = norm;

    const BaseKernelSpec base = spec.base();
    DenseMatrix k;

    if (!spec.ref_case) {
        if (spec.path == PathKind::kernel) {
            k = kernel_matrix(base, x_train, x_train);
            model.rank = base_kernel_rank(k, spec.eigen_tol);
        } else {
            auto [features, ref] = npt_fit(x_train, base, spec.eigen_tol);
            k = gram_from_features(features);
            model.rank = features.dim();
            model.train_features = std::move(features.features);
            model.reference = std::move(ref);
        }
    } else {
        const DenseMatrix refs = select_references(*spec.ref_case, x_train, x_neg, rng);
        ReferenceModel ref = fit_reference(refs, base, spec.eigen_tol);
        if (spec.path == PathKind::kernel) {
            k = ref_kernel_matrix(ref, x_train, x_train);
        } else {
            FeatureBlock features = map_samples(ref, x_train);
            k = gram_from_features(features);
            model.train_features = std::move(features.features);
        }
        model.rank = ref.rank();
        model.reference = std::move(ref);
    }

    attach_solver_state(model, k);
    return model;
}

std::vector<Decision> decide_block(const OneClassModel& model, const DenseMatrix& samples) {
    if (samples.rows() != model.dim()) {
        throw InvalidShape("sample dimension " + std::to_string(samples.rows()) +
                           " does not match model dimension " + std::to_string(model.dim()));
    }
    const std::size_t n = model.train.cols();
    const std::size_t m = samples.cols();
    const bool svdd = model.spec.method == Method::svdd;

    DenseMatrix k_xz; // n x m kernel values between training samples and inputs
    std::vector<double> k_zz(m, 0.0);

    if (model.spec.path == PathKind::kernel) {
        if (!model.spec.ref_case) {
            const BaseKernelSpec base = model.spec.base();
            k_xz = kernel_matrix(base, model.train, samples);
            if (svdd) {
                for (std::size_t j = 0; j < m; ++j) {
                    k_zz[j] = kernel_eval(base, samples.col(j), samples.col(j));
                }
            }
        } else {
            k_xz = ref_kernel_matrix(*model.reference, model.train, samples);
            if (svdd) k_zz = ref_kernel_diag(*model.reference, samples);
        }
    } else {
        const FeatureBlock phi = map_samples(*model.reference, samples);
        k_xz = matmul(model.train_features.transpose(), phi.features);
        if (svdd) {
            for (std::size_t j = 0; j < m; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < phi.dim(); ++t) {
                    s += phi.features(t, j) * phi.features(t, j);
                }
                k_zz[j] = s;
            }
        }
    }

    std::vector<Decision> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        double cross = 0.0;
        for (std::size_t i = 0; i < n; ++i) cross += model.alpha[i] * k_xz(i, j);
        Decision d;
        if (svdd) {
            const double dist_sq = k_zz[j] - 2.0 * cross + model.center_norm_sq;
            d.score = model.threshold - dist_sq;
        } else {
            d.score = cross - model.threshold;
        }
        d.is_target = d.score >= 0.0;
        out[j] = d;
    }
    return out;
}

std::vector<Decision> decide_raw(const OneClassModel& model, const DenseMatrix& raw_samples) {
    return decide_block(model, apply_norm(model.norm, raw_samples));
}

} // namespace refkernel
