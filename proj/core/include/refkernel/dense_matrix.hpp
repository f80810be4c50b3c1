#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace refkernel {

/// Column-major dense matrix of double. Samples are stored one per column
/// throughout the library, so a data block of N samples in dimension D is
/// a D x N matrix and a column is one sample.
class DenseMatrix {
public:
    DenseMatrix() = default;

    // Zero-filled rows x cols matrix.
    DenseMatrix(std::size_t rows, std::size_t cols);

    // Takes ownership of column-major data. Throws InvalidShape if the
    // buffer size does not equal rows * cols, InvalidMatrix on non-finite
    // entries.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    // Row-wise literal, for small hand-written instances:
    //   DenseMatrix::from_rows({{1, 2}, {3, 4}})
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    // View of column j; columns are contiguous.
    std::span<const double> col(std::size_t j) const {
        return {data_.data() + j * rows_, rows_};
    }

    DenseMatrix transpose() const;

    // New matrix made of the listed columns, in the given order.
    // Indices may repeat; out-of-range throws InvalidShape.
    DenseMatrix select_columns(const std::vector<std::size_t>& idx) const;

    // Horizontal concatenation [a b]; row counts must agree.
    static DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// a (m x k) times b (k x n). Throws InvalidShape on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& m);

// Largest entrywise |a - b|; shapes must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

} // namespace refkernel
