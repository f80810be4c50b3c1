#include "refkernel/eigen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// Reorders eigenpairs descending by eigenvalue (stable, so equal values keep
// rotation order) and fixes each eigenvector's sign.
EigenDecomposition finalize(const DenseMatrix& a, const DenseMatrix& v) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t src = order[t];
        out.eigenvalues[t] = a(src, src);
        std::size_t lead = 0;
        double lead_mag = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::fabs(v(i, src));
            if (mag > lead_mag) {
                lead_mag = mag;
                lead = i;
            }
        }
        const double flip = v(lead, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, t) = flip * v(i, src);
    }
    return out;
}

} // namespace

EigenDecomposition sym_eig(const DenseMatrix& m, const JacobiOptions& opts) {
    if (m.rows() != m.cols()) {
        throw InvalidMatrix("sym_eig requires a square matrix, got " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()));
    }
    const std::size_t n = m.rows();
    if (n == 0) return {};

    double asym = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = j + 1; i < n; ++i)
            asym = std::max(asym, std::fabs(m(i, j) - m(j, i)));
    if (asym > opts.asymmetry_tol) {
        throw InvalidMatrix("matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
    }

    // Work on the symmetric part; rounding noise below the tolerance is folded
    // away so the rotations see an exactly symmetric matrix.
    DenseMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) = 0.5 * (m(i, j) + m(j, i));

    DenseMatrix v = DenseMatrix::identity(n);
    const double stop = opts.off_diag_rel_tol * frobenius_norm(a);

    bool converged = off_diagonal_norm(a) <= stop;
    for (std::size_t sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle choosing the smaller root keeps |t| <= 1,
                // which bounds element growth.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a(p, p);
                const double aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(p, i) = a(i, p);
                    a(i, q) = s * aip + c * aiq;
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        converged = off_diagonal_norm(a) <= stop;
    }
    if (!converged) {
        throw ConvergenceFailure("jacobi sweeps exhausted at off-diagonal norm " +
                                 std::to_string(off_diagonal_norm(a)));
    }
    return finalize(a, v);
}

EigenDecomposition truncate_spectrum(const EigenDecomposition& eig, double tol) {
    assert(tol > 0.0);
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < eig.eigenvalues.size(); ++t) {
        if (eig.eigenvalues[t] >= tol) keep.push_back(t);
    }
    EigenDecomposition out;
    out.eigenvalues.reserve(keep.size());
    for (std::size_t t : keep) out.eigenvalues.push_back(eig.eigenvalues[t]);
    out.eigenvectors = eig.eigenvectors.select_columns(keep);
    return out;
}

} // namespace refkernel
