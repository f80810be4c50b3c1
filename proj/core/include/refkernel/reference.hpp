#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "refkernel/dense_matrix.hpp"
#include "refkernel/eigen.hpp"
#include "refkernel/kernel.hpp"
#include "refkernel/rng.hpp"

namespace refkernel {

/// Recipes for building the reference set R from training data X (D x N),
/// an optional negative pool X_neg, and an RNG. M below is the number of
/// reference columns; T = min(N, N_neg), or N when no negative pool is given.
enum class ReferenceCase : int {
    training = 1,            // R = X, M = N
    gaussian_matched = 2,    // M = N iid N(0,1) columns
    training_subsample = 3,  // M = floor(N/2) distinct columns of X
    gaussian_half = 4,       // M = floor(N/2) iid N(0,1) columns
    negatives_augmented = 5, // R = [X, T shuffled negative columns], M = N + T
    gaussian_augmented = 6,  // R = [X, T iid N(0,1) columns], M = N + T
    gaussian_extended = 7,   // M = N + T iid N(0,1) columns
};

// Stable one-token labels ("1".."7") used in configs, results and filenames.
const char* reference_case_label(ReferenceCase c);
ReferenceCase reference_case_from_label(const std::string& label);

// Materializes the reference set for a case. x_neg may be null for every case
// except negatives_augmented, which throws MissingNegatives without it.
// Cases 3 and 4 require N >= 2 (InsufficientData); empty x throws
// EmptyReferenceSet. The RNG is consumed only by the random cases.
DenseMatrix select_references(ReferenceCase c, const DenseMatrix& x,
                              const DenseMatrix* x_neg, Rng& rng);

/// Fitted reference map. Holds everything needed to evaluate the reference
/// kernel and the explicit feature map for arbitrary new samples:
/// the references themselves, the base kernel, the centering statistics of
/// K_RR, and the truncated eigensystem of the centered K_RR.
struct ReferenceModel {
    DenseMatrix references;           // D x M
    BaseKernelSpec base;
    CenteringContext centering;
    DenseMatrix eigenvectors;         // M x r, orthonormal columns
    std::vector<double> eigenvalues;  // length r, descending, all >= tol
    double tol = 1e-6;
    DenseMatrix pseudo_inverse;       // M x M, U diag(1/lambda) U^T
    std::uint64_t id = 0;             // process-local identity token

    std::size_t rank() const { return eigenvalues.size(); }
    std::size_t reference_count() const { return references.cols(); }
};

// Computes K_RR, centers it, eigendecomposes and truncates at tol. Throws
// DegenerateReferenceSet when no eigenvalue reaches tol.
ReferenceModel fit_reference(const DenseMatrix& references, const BaseKernelSpec& base,
                             double tol = 1e-6);

/// Explicit feature vectors, one sample per column. dim() is the rank of the
/// producing model; origin_id is that model's id.
struct FeatureBlock {
    DenseMatrix features; // r x n
    std::uint64_t origin_id = 0;

    std::size_t dim() const { return features.rows(); }
    std::size_t count() const { return features.cols(); }
};

// Maps samples through the fitted reference: Lambda^{-1/2} U^T times the
// centered cross kernel. Sample dimension must match the references.
FeatureBlock map_samples(const ReferenceModel& model, const DenseMatrix& x);

// Reference kernel block between two sample sets: centered cross kernels
// joined through the truncated pseudo-inverse of the centered K_RR. Equals
// the Gram matrix of map_samples features up to roundoff, but is computed
// along the kernel route, not via the feature map.
DenseMatrix ref_kernel_matrix(const ReferenceModel& model, const DenseMatrix& a,
                              const DenseMatrix& b);

// Null-space projection transform: the reference model with R = X, plus the
// training features taken directly from the eigensystem
// (Lambda^{1/2} U^T, one column per training sample).
std::pair<FeatureBlock, ReferenceModel> npt_fit(const DenseMatrix& x,
                                                const BaseKernelSpec& base,
                                                double tol = 1e-6);

// Feature map for new samples under an npt_fit model. Identical to
// map_samples; named separately because training features come from npt_fit
// while test features must come through this map.
FeatureBlock npt_map_test(const ReferenceModel& model, const DenseMatrix& x);

} // namespace refkernel
