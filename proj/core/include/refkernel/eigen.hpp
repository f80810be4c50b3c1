#pragma once

#include <cstddef>
#include <vector>

#include "refkernel/dense_matrix.hpp"

namespace refkernel {

/// Spectral decomposition of a symmetric matrix. eigenvalues[t] pairs with
/// column t of eigenvectors; eigenvalues are sorted descending and each
/// eigenvector is sign-fixed so its largest-magnitude component is positive
/// (first such index on magnitude ties). Identical input yields identical
/// output, bit for bit.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors; // n x k, orthonormal columns
};

struct JacobiOptions {
    std::size_t max_sweeps = 100;
    // Convergence: off-diagonal Frobenius norm <= off_diag_rel_tol * ||input||_F.
    double off_diag_rel_tol = 1e-12;
    // Inputs with max |m_ij - m_ji| above this are rejected; below it the
    // symmetric part (m + m^T) / 2 is decomposed.
    double asymmetry_tol = 1e-9;
};

// Cyclic Jacobi rotation eigensolver. Throws InvalidMatrix for non-square or
// asymmetric input, ConvergenceFailure if the sweep budget is exhausted.
EigenDecomposition sym_eig(const DenseMatrix& m, const JacobiOptions& opts = {});

// Keeps the eigenpairs with eigenvalue >= tol (tol > 0). The result can be
// empty; order is preserved.
EigenDecomposition truncate_spectrum(const EigenDecomposition& eig, double tol);

} // namespace refkernel
