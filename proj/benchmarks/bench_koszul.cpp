#include <benchmark/benchmark.h>

#include "dgper/koszul.hpp"
#include "fixtures.hpp"

using namespace dgper;
using namespace dgper::testing;

namespace {

void BM_minimal_resolution(benchmark::State& state) {
    AlgebraPtr xy = poly_xy(Field::prime(7), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimal_resolution(xy, 8, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_minimal_resolution)->Arg(3)->Arg(4)->Arg(5);

void BM_ext_algebra(benchmark::State& state) {
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    Resolution res = minimal_resolution(xy, 8, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ext_algebra(res));
    }
}
BENCHMARK(BM_ext_algebra);

void BM_verify_duality(benchmark::State& state) {
    AlgebraPtr xy = poly_xy(Field::prime(7), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_koszul_duality(xy, 8, 4));
    }
}
BENCHMARK(BM_verify_duality);

} // namespace

BENCHMARK_MAIN();
