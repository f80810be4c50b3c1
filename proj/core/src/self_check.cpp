#include "refkernel/self_check.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "refkernel/eigen.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/one_class.hpp"
#include "refkernel/reference.hpp"
#include "refkernel/rng.hpp"

namespace refkernel {

namespace {

struct Instance {
    DenseMatrix x;     // training block
    DenseMatrix x_neg; // negative pool
    BaseKernelSpec base;
};

// Clustered normal data with a shifted negative pool; sigma near the data
// scale so kernels are neither flat nor diagonal.
std::vector<Instance> make_instances(std::uint64_t seed) {
    std::vector<Instance> out;
    const std::size_t dims[] = {2, 3, 6};
    const std::size_t sizes[] = {6, 11, 20};
    for (std::size_t v = 0; v < 3; ++v) {
        Rng rng = make_rng(seed, "self-check/" + std::to_string(v));
        Instance inst;
        inst.x = standard_normal_matrix(dims[v], sizes[v], rng);
        inst.x_neg = standard_normal_matrix(dims[v], sizes[v] + v, rng);
        for (std::size_t j = 0; j < inst.x_neg.cols(); ++j) inst.x_neg(0, j) += 2.5;
        inst.base = BaseKernelSpec::rbf(1.0 + 0.5 * static_cast<double>(v));
        out.push_back(std::move(inst));
    }
    return out;
}

const ReferenceCase kAllCases[] = {
    ReferenceCase::training,          ReferenceCase::gaussian_matched,
    ReferenceCase::training_subsample, ReferenceCase::gaussian_half,
    ReferenceCase::negatives_augmented, ReferenceCase::gaussian_augmented,
    ReferenceCase::gaussian_extended,
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

CheckResult run_check(const std::string& name, double tolerance,
                      const std::function<double()>& worst_value) {
    CheckResult res;
    res.name = name;
    try {
        const double worst = worst_value();
        res.pass = worst <= tolerance;
        res.detail = "worst " + fmt(worst) + ", tolerance " + fmt(tolerance);
    } catch (const Error& e) {
        res.pass = false;
        res.detail = e.what();
    }
    return res;
}

} // namespace

std::vector<CheckResult> run_self_check(std::uint64_t seed, double eigen_tol) {
    const std::vector<Instance> instances = make_instances(seed);
    std::vector<CheckResult> results;

    results.push_back(run_check("gram-equivalence", 1e-8, [&] {
        double worst = 0.0;
        for (const Instance& inst : instances) {
            for (ReferenceCase c : kAllCases) {
                Rng rng = make_rng(seed, "gram/" + std::string(reference_case_label(c)));
                const DenseMatrix refs = select_references(c, inst.x, &inst.x_neg, rng);
                const ReferenceModel model = fit_reference(refs, inst.base, eigen_tol);
                const FeatureBlock fa = map_samples(model, inst.x);
                const FeatureBlock fb = map_samples(model, inst.x_neg);
                const DenseMatrix gram = matmul(fa.features.transpose(), fb.features);
                const DenseMatrix direct = ref_kernel_matrix(model, inst.x, inst.x_neg);
                worst = std::max(worst, max_abs_diff(gram, direct));
            }
        }
        return worst;
    }));

    results.push_back(run_check("ref-kernel-psd", 1e-8, [&] {
        double worst = 0.0;
        for (const Instance& inst : instances) {
            for (ReferenceCase c : kAllCases) {
                Rng rng = make_rng(seed, "psd/" + std::string(reference_case_label(c)));
                const DenseMatrix refs = select_references(c, inst.x, &inst.x_neg, rng);
                const ReferenceModel model = fit_reference(refs, inst.base, eigen_tol);
                const DenseMatrix k = ref_kernel_matrix(model, inst.x, inst.x);
                const EigenDecomposition eig = sym_eig(k);
                const double smallest = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
                worst = std::max(worst, -smallest);
            }
        }
        return worst;
    }));

    results.push_back(run_check("training-feature-identity", 1e-8, [&] {
        double worst = 0.0;
        for (const Instance& inst : instances) {
            const auto [features, model] = npt_fit(inst.x, inst.base, eigen_tol);
            const FeatureBlock mapped = npt_map_test(model, inst.x);
            worst = std::max(worst, max_abs_diff(features.features, mapped.features));
        }
        return worst;
    }));

    results.push_back(run_check("centering-zero-sums", 1e-10, [&] {
        double worst = 0.0;
        for (const Instance& inst : instances) {
            const DenseMatrix k_rr = kernel_matrix(inst.base, inst.x, inst.x);
            const auto [centered, ctx] = center_reference_kernel(k_rr);
            const double m = static_cast<double>(ctx.reference_count);
            for (std::size_t i = 0; i < centered.rows(); ++i) {
                double row = 0.0, col = 0.0;
                for (std::size_t j = 0; j < centered.cols(); ++j) {
                    row += centered(i, j);
                    col += centered(j, i);
                }
                worst = std::max({worst, std::fabs(row) / m, std::fabs(col) / m});
            }
            const DenseMatrix cross = center_cross_kernel(
                ctx, kernel_matrix(inst.base, inst.x, inst.x_neg));
            for (std::size_t j = 0; j < cross.cols(); ++j) {
                double col = 0.0;
                for (std::size_t i = 0; i < cross.rows(); ++i) col += cross(i, j);
                worst = std::max(worst, std::fabs(col) / m);
            }
        }
        return worst;
    }));

    results.push_back(run_check("case1-reconstruction", 1e-8, [&] {
        // The reference kernel over the training references must reproduce
        // the centered base kernel; a loose eigenvalue cutoff breaks this.
        double worst = 0.0;
        for (const Instance& inst : instances) {
            const ReferenceModel model = fit_reference(inst.x, inst.base, eigen_tol);
            const DenseMatrix k = ref_kernel_matrix(model, inst.x, inst.x);
            const auto [centered, ctx] =
                center_reference_kernel(kernel_matrix(inst.base, inst.x, inst.x));
            worst = std::max(worst, max_abs_diff(k, centered));
        }
        return worst;
    }));

    results.push_back(run_check("solver-kkt", 1e-6, [&] {
        double worst = 0.0;
        for (const Instance& inst : instances) {
            const DenseMatrix k = kernel_matrix(inst.base, inst.x, inst.x);
            const std::size_t n = k.rows();
            for (double hyper : {0.25, 0.5, 1.0}) {
                const SvddModel svdd = svdd_fit(k, hyper);
                double sum = 0.0;
                for (double a : svdd.alpha) {
                    sum += a;
                    if (a < 0.0 || a > hyper + 1e-12) return 1.0;
                }
                worst = std::max({worst, std::fabs(sum - 1.0), svdd.kkt_gap});

                const OcsvmModel oc = ocsvm_fit(k, hyper);
                const double upper = 1.0 / (hyper * static_cast<double>(n));
                sum = 0.0;
                std::size_t positive = 0;
                std::size_t outliers = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double a = oc.alpha[i];
                    sum += a;
                    if (a < 0.0 || a > upper + 1e-12) return 1.0;
                    if (a > 0.0) ++positive;
                    if (ocsvm_decide(oc, k.col(i)).score < -1e-8) ++outliers;
                }
                worst = std::max({worst, std::fabs(sum - 1.0), oc.kkt_gap});
                // nu bounds the training outlier fraction above and the
                // support-vector fraction below.
                const double nu_n = hyper * static_cast<double>(n);
                if (static_cast<double>(outliers) > nu_n + 1e-8) return 1.0;
                if (static_cast<double>(positive) < nu_n - 1.0 - 1e-8) return 1.0;
            }
        }
        return worst;
    }));

    return results;
}

} // namespace refkernel
