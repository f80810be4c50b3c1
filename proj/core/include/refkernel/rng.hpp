#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "refkernel/dense_matrix.hpp"

namespace refkernel {

using Rng = std::mt19937_64;

// FNV-1a over the scope string mixed into the master seed. Distinct scopes
// give independent streams from one master seed; same inputs always give the
// same seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view scope);

Rng make_rng(std::uint64_t master, std::string_view scope);

// rows x cols of iid N(0, 1) draws, filled column by column.
DenseMatrix standard_normal_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng);

// k distinct values from 0..n-1 in draw order (partial Fisher-Yates).
// Requires k <= n.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

double uniform_real(double lo, double hi, Rng& rng);

} // namespace refkernel
