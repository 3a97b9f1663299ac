#include <benchmark/benchmark.h>

#include "dgper/triang.hpp"
#include "fixtures.hpp"

using namespace dgper;
using namespace dgper::testing;

namespace {

DgModule corpus_cone(const AlgebraPtr& alg, int size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DgModule x = random_filt_module(alg, size, rng);
    DgModule y = random_filt_module(alg, size, rng);
    return cone(random_chain_map(x, y, rng));
}

void BM_quotient_build(benchmark::State& state) {
    Field f7 = Field::prime(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(poly_xy(f7, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_quotient_build)->Arg(4)->Arg(6)->Arg(8);

void BM_minimize_cone(benchmark::State& state) {
    AlgebraPtr d2 = truncated_poly(Field::prime(7), 2);
    DgModule c = corpus_cone(d2, static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize(c));
    }
}
BENCHMARK(BM_minimize_cone)->Arg(4)->Arg(6)->Arg(8);

void BM_homotopy_classes(benchmark::State& state) {
    AlgebraPtr d2 = truncated_poly(Field::prime(7), 2);
    std::mt19937_64 rng(11);
    DgModule x = random_filt_module(d2, static_cast<int>(state.range(0)), rng);
    DgModule y = random_filt_module(d2, static_cast<int>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hom_homotopy_classes(x, y));
    }
}
BENCHMARK(BM_homotopy_classes)->Arg(4)->Arg(6)->Arg(8);

void BM_end_algebra(benchmark::State& state) {
    AlgebraPtr d2 = truncated_poly(Field::prime(13), 2);
    DgModule m = two_step_module(d2);
    DgModule sum = m;
    for (int i = 1; i < state.range(0); ++i) sum = direct_sum(sum, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(end_algebra(sum));
    }
}
BENCHMARK(BM_end_algebra)->Arg(1)->Arg(2)->Arg(3);

void BM_krs_decompose(benchmark::State& state) {
    AlgebraPtr d2 = truncated_poly(Field::prime(31), 2);
    DgModule m = two_step_module(d2);
    DgModule sum = direct_sum(m, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(krs_decompose(sum, 1));
    }
}
BENCHMARK(BM_krs_decompose);

} // namespace

namespace {

void BM_homotopy_witness_ceiling(benchmark::State& state) {
    AlgebraPtr d2 = truncated_poly(Field::prime(7), 2);
    std::mt19937_64 rng(99);
    DgModule big = random_filt_module(d2, 10, rng);
    for (int i = 1; i < state.range(0); ++i) big = direct_sum(big, random_filt_module(d2, 10, rng));
    ChainMap f = random_chain_map(big, big, rng);
    DgModule c = cone(f);
    MinimizationTrace tr = minimize(c);
    ChainMap round = compose(tr.backward, tr.forward);
    for (auto _ : state) {
        benchmark::DoNotOptimize(homotopy_between(round, ChainMap::identity(c)));
    }
}
BENCHMARK(BM_homotopy_witness_ceiling)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

} // namespace
