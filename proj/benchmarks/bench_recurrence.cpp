#include <benchmark/benchmark.h>

#include "weakcast/recurrence.hpp"
#include "weakcast/rng.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

namespace {

SamplePath fair_path(std::size_t n) {
    return SamplePath::from_symbols(generate_symbols(OracleSource::preset("iid_fair"), n, 7));
}

void search(benchmark::State& state, SearchEngine engine) {
    const auto path = fair_path(static_cast<std::size_t>(state.range(0)));
    const auto bits = Quantizer::finite(Alphabet::of_size(2));
    const PatternQuery query{1, static_cast<std::size_t>(state.range(1)), 64};
    for (auto _ : state) benchmark::DoNotOptimize(backward_recurrences(path, bits, query, engine));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SearchNaive(benchmark::State& state) { search(state, SearchEngine::naive); }
void BM_SearchIndexed(benchmark::State& state) { search(state, SearchEngine::indexed); }

}  // namespace

BENCHMARK(BM_SearchNaive)->Args({100000, 8})->Args({1000000, 12});
BENCHMARK(BM_SearchIndexed)->Args({100000, 8})->Args({1000000, 12});
