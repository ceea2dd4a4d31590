#include <benchmark/benchmark.h>

#include "slicereg/fibers.hpp"
#include "slicereg/jacobian.hpp"
#include "slicereg/registry.hpp"

using namespace slicereg;

namespace {

const SliceFunction& fn(const char* name) { return find_function(name)->fn; }

void BM_EvalPolynomial(benchmark::State& state) {
    const SliceFunction& f = fn("f7");
    const Quaternion x{0.3, 0.7, -0.2, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(f.eval(x));
}
BENCHMARK(BM_EvalPolynomial);

void BM_EvalTwoSlices(benchmark::State& state) {
    const SliceFunction& f = fn("schwarz_exp");
    const Quaternion x{0.3, 0.7, -0.2, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(f.eval(x));
}
BENCHMARK(BM_EvalTwoSlices);

void BM_JacobianDet(benchmark::State& state) {
    const SliceFunction& f = fn("f7");
    const Quaternion x{0.3, 0.7, -0.2, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(jacobian_det(f, x));
}
BENCHMARK(BM_JacobianDet);

void BM_JacobianMatrix(benchmark::State& state) {
    const SliceFunction& f = fn("f7");
    const Quaternion x{0.3, 0.7, -0.2, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(jacobian_matrix(f, x));
}
BENCHMARK(BM_JacobianMatrix);

void BM_NormalVanishes(benchmark::State& state) {
    const SliceFunction& f = fn("f5");
    for (auto _ : state) benchmark::DoNotOptimize(normal_vanishes(f, Quaternion{}));
}
BENCHMARK(BM_NormalVanishes);

}  // namespace

BENCHMARK_MAIN();
