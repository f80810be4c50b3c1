#include "refkernel/rng.hpp"

#include <cassert>

#include "refkernel/errors.hpp"

namespace refkernel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view scope) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : scope) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(master ^ h);
}

Rng make_rng(std::uint64_t master, std::string_view scope) {
    return Rng(derive_seed(master, scope));
}

DenseMatrix standard_normal_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    DenseMatrix m(rows, cols);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = normal(rng);
    return m;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    return idx;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
    if (k > n) {
        throw InvalidShape("cannot draw " + std::to_string(k) + " distinct values from " +
                           std::to_string(n));
    }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(k);
    return idx;
}

double uniform_real(double lo, double hi, Rng& rng) {
    assert(lo <= hi);
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

} // namespace refkernel
