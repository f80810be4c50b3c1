#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "refkernel/dense_matrix.hpp"
#include "refkernel/one_class.hpp"
#include "refkernel/reference.hpp"
#include "refkernel/rng.hpp"
#include "refkernel/standardize.hpp"

namespace refkernel {

enum class Method { svdd, ocsvm };
enum class PathKind { kernel, mapping };

const char* method_label(Method m);
const char* path_label(PathKind p);
Method method_from_label(const std::string& s);
PathKind path_from_label(const std::string& s);

// "base" for no reference set, otherwise the reference case label "1".."7".
std::string case_label(const std::optional<ReferenceCase>& c);
std::optional<ReferenceCase> case_from_label(const std::string& s);

/// Everything that determines a fit, except the data and the RNG.
struct ModelSpec {
    Method method = Method::svdd;
    PathKind path = PathKind::kernel;
    std::optional<ReferenceCase> ref_case; // nullopt: plain base kernel
    KernelKind kernel = KernelKind::rbf;
    double sigma = 1.0;   // resolved bandwidth, ignored by the linear kernel
    double hyper = 0.5;   // C for svdd, nu for ocsvm
    double eigen_tol = 1e-6;
    SmoOptions smo;

    BaseKernelSpec base() const;
};

/// A fitted one-class model with everything scoring needs: the standardized
/// training block, the reference model when one exists, the training
/// features on the mapping path, and the solver state.
struct OneClassModel {
    ModelSpec spec;
    DenseMatrix train;                       // standardized, D x N
    std::optional<ReferenceModel> reference; // absent only for base + kernel
    DenseMatrix train_features;              // r x N on the mapping path, else 0 x 0
    std::vector<double> alpha;
    std::vector<std::size_t> support_idx;
    double threshold = 0.0;       // squared radius (svdd) or offset rho (ocsvm)
    double center_norm_sq = 0.0;  // svdd only
    double kkt_gap = 0.0;
    std::size_t iterations = 0;
    std::size_t rank = 0;         // kept eigenvalue count = feature dimension
    NormStats norm;               // standardization applied before this model

    std::size_t dim() const { return train.rows(); }
};

// Fits on an already standardized training block. x_neg (standardized, may be
// null) feeds reference selection for the augmented cases. The RNG is
// consumed only by random reference cases. norm is stored for scoring raw
// samples later.
OneClassModel fit_one_class(const ModelSpec& spec, const DenseMatrix& x_train,
                            const DenseMatrix* x_neg, Rng& rng, const NormStats& norm);

// Scores standardized samples, one Decision per column. Ties (score == 0)
// count as target.
std::vector<Decision> decide_block(const OneClassModel& model, const DenseMatrix& samples);

// Standardizes raw samples with the stored stats, then decides.
std::vector<Decision> decide_raw(const OneClassModel& model, const DenseMatrix& raw_samples);

} // namespace refkernel
