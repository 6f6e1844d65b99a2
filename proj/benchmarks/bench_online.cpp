#include <benchmark/benchmark.h>

#include "weakcast/online.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

// Amortized cost of one forecast + push on a growing history.
static void BM_ForecasterStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto sym = generate_symbols(OracleSource::preset("markov_stay90"), n, 3);
    const auto q = Quantizer::finite(Alphabet::of_size(2));
    const auto s = Schedule::finite_default(2, 0.5).with_default(ConditionalDistribution::uniform(2, true));
    for (auto _ : state) {
        PatternForecaster f(q, s);
        for (Symbol x : sym) {
            benchmark::DoNotOptimize(f.forecast());
            f.push(static_cast<double>(x));
        }
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ForecasterStep)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
