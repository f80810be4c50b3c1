#include <benchmark/benchmark.h>

#include "refkernel/dense_matrix.hpp"
#include "refkernel/eigen.hpp"
#include "refkernel/kernel.hpp"
#include "refkernel/one_class.hpp"
#include "refkernel/reference.hpp"
#include "refkernel/rng.hpp"

using refkernel::BaseKernelSpec;
using refkernel::DenseMatrix;

namespace {

DenseMatrix sample_block(std::size_t d, std::size_t n, const char* scope) {
    auto rng = refkernel::make_rng(1, scope);
    return refkernel::standard_normal_matrix(d, n, rng);
}

void BM_KernelMatrix(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix x = sample_block(8, n, "bench/kernel");
    const auto spec = BaseKernelSpec::rbf(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refkernel::kernel_matrix(spec, x, x));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelMatrix)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_SymEig(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix x = sample_block(8, n, "bench/eig");
    const DenseMatrix k = refkernel::kernel_matrix(BaseKernelSpec::rbf(1.0), x, x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refkernel::sym_eig(k));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SymEig)->Arg(32)->Arg(64)->Arg(128)->Complexity();

void BM_FitReference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix x = sample_block(8, n, "bench/fit-ref");
    const auto spec = BaseKernelSpec::rbf(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refkernel::fit_reference(x, spec, 1e-6));
    }
}
BENCHMARK(BM_FitReference)->Arg(32)->Arg(64)->Arg(128);

void BM_MapSamples(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix x = sample_block(8, n, "bench/map");
    const DenseMatrix z = sample_block(8, 64, "bench/map-z");
    const auto model = refkernel::fit_reference(x, BaseKernelSpec::rbf(1.0), 1e-6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refkernel::map_samples(model, z));
    }
}
BENCHMARK(BM_MapSamples)->Arg(32)->Arg(64)->Arg(128);

void BM_SvddFit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix x = sample_block(8, n, "bench/svdd");
    const DenseMatrix k = refkernel::kernel_matrix(BaseKernelSpec::rbf(1.0), x, x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refkernel::svdd_fit(k, 0.2));
    }
}
BENCHMARK(BM_SvddFit)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_OcsvmFit(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DenseMatrix x = sample_block(8, n, "bench/ocsvm");
    const DenseMatrix k = refkernel::kernel_matrix(BaseKernelSpec::rbf(1.0), x, x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(refkernel::ocsvm_fit(k, 0.3));
    }
}
BENCHMARK(BM_OcsvmFit)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

} // namespace

BENCHMARK_MAIN();
