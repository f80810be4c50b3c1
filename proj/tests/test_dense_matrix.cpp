#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "refkernel/dense_matrix.hpp"
#include "refkernel/errors.hpp"
#include "refkernel/rng.hpp"

using refkernel::DenseMatrix;

TEST_CASE("zero construction and indexing") {
    DenseMatrix m(2, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 2; ++i) CHECK(m(i, j) == 0.0);
    m(1, 2) = 4.5;
    CHECK(m(1, 2) == 4.5);
}

TEST_CASE("data constructor validates size and finiteness") {
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), refkernel::InvalidShape);
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::nan("")}), refkernel::InvalidMatrix);
    CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::numeric_limits<double>::infinity()}),
                    refkernel::InvalidMatrix);
    const DenseMatrix ok(2, 2, {1.0, 2.0, 3.0, 4.0});
    // Column-major storage: the initializer fills columns first.
    CHECK(ok(0, 0) == 1.0);
    CHECK(ok(1, 0) == 2.0);
    CHECK(ok(0, 1) == 3.0);
    CHECK(ok(1, 1) == 4.0);
}

TEST_CASE("from_rows lays data out row by row") {
    const DenseMatrix m = DenseMatrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 2) == 6.0);
    CHECK_THROWS_AS(DenseMatrix::from_rows({{1.0}, {1.0, 2.0}}), refkernel::InvalidShape);
}

TEST_CASE("identity") {
    const DenseMatrix id = DenseMatrix::identity(3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("transpose involution on random input") {
    auto rng = refkernel::make_rng(1234, "test/transpose");
    const DenseMatrix m = refkernel::standard_normal_matrix(4, 7, rng);
    const DenseMatrix t = m.transpose();
    CHECK(t.rows() == 7);
    CHECK(t.cols() == 4);
    for (std::size_t j = 0; j < 7; ++j)
        for (std::size_t i = 0; i < 4; ++i) CHECK(t(j, i) == m(i, j));
    CHECK(refkernel::max_abs_diff(t.transpose(), m) == 0.0);
}

TEST_CASE("matmul matches the straightforward triple loop") {
    auto rng = refkernel::make_rng(99, "test/matmul");
    const std::size_t dims[][3] = {{1, 1, 1}, {2, 3, 4}, {5, 5, 5}, {7, 1, 6}, {3, 8, 2}};
    for (const auto& d : dims) {
        const DenseMatrix a = refkernel::standard_normal_matrix(d[0], d[1], rng);
        const DenseMatrix b = refkernel::standard_normal_matrix(d[1], d[2], rng);
        const DenseMatrix got = refkernel::matmul(a, b);
        const DenseMatrix want = oracle::matmul_ijk(a, b);
        CHECK(refkernel::max_abs_diff(got, want) <= 1e-12);
    }
}

TEST_CASE("matmul rejects inner dimension mismatch") {
    const DenseMatrix a(2, 3);
    const DenseMatrix b(4, 2);
    CHECK_THROWS_AS(refkernel::matmul(a, b), refkernel::InvalidShape);
}

TEST_CASE("matmul with zero-column operand") {
    const DenseMatrix a(3, 2);
    const DenseMatrix b(2, 0);
    const DenseMatrix c = refkernel::matmul(a, b);
    CHECK(c.rows() == 3);
    CHECK(c.cols() == 0);
}

TEST_CASE("select_columns picks, repeats, and range-checks") {
    const DenseMatrix m = DenseMatrix::from_rows({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
    const DenseMatrix s = m.select_columns({2, 0, 2});
    CHECK(s.cols() == 3);
    CHECK(s(0, 0) == 3.0);
    CHECK(s(0, 1) == 1.0);
    CHECK(s(1, 2) == 6.0);
    CHECK_THROWS_AS(m.select_columns({3}), refkernel::InvalidShape);
    CHECK(m.select_columns({}).cols() == 0);
}

TEST_CASE("hcat joins column blocks") {
    const DenseMatrix a = DenseMatrix::from_rows({{1.0}, {2.0}});
    const DenseMatrix b = DenseMatrix::from_rows({{3.0, 4.0}, {5.0, 6.0}});
    const DenseMatrix c = refkernel::DenseMatrix::hcat(a, b);
    CHECK(c.rows() == 2);
    CHECK(c.cols() == 3);
    CHECK(c(0, 0) == 1.0);
    CHECK(c(0, 1) == 3.0);
    CHECK(c(1, 2) == 6.0);
    const DenseMatrix empty(2, 0);
    CHECK(refkernel::max_abs_diff(refkernel::DenseMatrix::hcat(empty, b), b) == 0.0);
    CHECK(refkernel::max_abs_diff(refkernel::DenseMatrix::hcat(b, empty), b) == 0.0);
    CHECK_THROWS_AS(refkernel::DenseMatrix::hcat(a, DenseMatrix(3, 1)), refkernel::InvalidShape);
}

TEST_CASE("col returns a live view of one sample") {
    DenseMatrix m = DenseMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    auto c = m.col(1);
    CHECK(c.size() == 2);
    CHECK(c[0] == 2.0);
    CHECK(c[1] == 4.0);
}

TEST_CASE("norms and elementwise distance") {
    const DenseMatrix m = DenseMatrix::from_rows({{3.0, 0.0}, {0.0, 4.0}});
    CHECK(refkernel::frobenius_norm(m) == doctest::Approx(5.0).epsilon(1e-15));
    DenseMatrix n = m;
    n(1, 1) = 4.5;
    CHECK(refkernel::max_abs_diff(m, n) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(refkernel::max_abs_diff(m, DenseMatrix(1, 2)), refkernel::InvalidShape);
}
