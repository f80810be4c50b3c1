#include "refkernel/dense_matrix.hpp"

#include <cmath>
#include <string>

#include "refkernel/errors.hpp"

namespace refkernel {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw InvalidShape("matrix data has " + std::to_string(data_.size()) +
                           " entries, expected " + std::to_string(rows_ * cols_));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw InvalidMatrix("matrix contains a non-finite entry");
        }
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw InvalidShape("ragged row in matrix literal");
        }
        std::size_t j = 0;
        for (double v : row) {
            if (!std::isfinite(v)) throw InvalidMatrix("matrix contains a non-finite entry");
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i)
            t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::select_columns(const std::vector<std::size_t>& idx) const {
    DenseMatrix out(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= cols_) {
            throw InvalidShape("column index " + std::to_string(idx[j]) +
                               " out of range for " + std::to_string(cols_) + " columns");
        }
        for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
    }
    return out;
}

DenseMatrix DenseMatrix::hcat(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) {
        throw InvalidShape("hcat row mismatch: " + std::to_string(a.rows()) + " vs " +
                           std::to_string(b.rows()));
    }
    DenseMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t i = 0; i < b.rows(); ++i) out(i, a.cols() + j) = b(i, j);
    return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InvalidShape("matmul inner dimensions disagree: " + std::to_string(a.cols()) +
                           " vs " + std::to_string(b.rows()));
    }
    DenseMatrix c(a.rows(), b.cols());
    // jlk order walks both a and c down columns; accumulation over l keeps a
    // fixed left-to-right summation order per output entry.
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const double blj = b(l, j);
            for (std::size_t i = 0; i < a.rows(); ++i) {
                c(i, j) += a(i, l) * blj;
            }
        }
    }
    return c;
}

double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidShape("max_abs_diff shape mismatch");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        const double d = std::fabs(a.data()[k] - b.data()[k]);
        if (d > m) m = d;
    }
    return m;
}

} // namespace refkernel
