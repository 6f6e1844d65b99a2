#include <benchmark/benchmark.h>

#include "weakcast/cesaro.hpp"
#include "weakcast/models.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

namespace {

std::vector<Symbol> past(std::size_t n) { return generate_symbols(OracleSource::preset("markov_stay90"), n, 5); }

}  // namespace

static void BM_CesaroKtFast(benchmark::State& state) {
    const auto x = past(static_cast<std::size_t>(state.range(0)));
    const auto m = KTMixtureModel::default_order(x.size());
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_estimate_kt(x, 2, m));
}

static void BM_CesaroKtGeneric(benchmark::State& state) {
    const auto x = past(static_cast<std::size_t>(state.range(0)));
    const KTMixtureModel proto(2, KTMixtureModel::default_order(x.size()));
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_estimate(proto, x));
}

static void BM_CesaroLz78(benchmark::State& state) {
    const auto x = past(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_estimate(ModelKind::lz78, 2, x));
}

BENCHMARK(BM_CesaroKtFast)->Arg(1000)->Arg(10000);
BENCHMARK(BM_CesaroKtGeneric)->Arg(1000);
BENCHMARK(BM_CesaroLz78)->Arg(1000)->Arg(10000);
