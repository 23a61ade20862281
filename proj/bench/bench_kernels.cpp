// Serial reference vs OpenMP kernels: dense Magnus expansion and
// trivializer subfamily verification.

#include <benchmark/benchmark.h>

#include <random>

#include "ntriv/magnus.hpp"
#include "ntriv/trivializer.hpp"

using namespace ntriv;

namespace {

Word long_word(std::size_t length, int alphabet) {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> gen(1, alphabet), sign(0, 1);
    std::vector<Letter> ls;
    while (ls.size() < length) ls.push_back({gen(rng), sign(rng) ? 1 : -1});
    return Word(ls);
}

void BM_ExpandSerial(benchmark::State& state) {
    const Word w = long_word(static_cast<std::size_t>(state.range(0)), 3);
    const std::vector<int> alpha{1, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(expand_dense_serial(w, alpha, static_cast<int>(state.range(1))));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExpandParallel(benchmark::State& state) {
    const Word w = long_word(static_cast<std::size_t>(state.range(0)), 3);
    const std::vector<int> alpha{1, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(expand_dense_parallel(w, alpha, static_cast<int>(state.range(1))));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

TrivializerWord extremal(int m) { return build_letter_sets({extremal_entry_word(2, m)}); }

void BM_VerifyFamilySerial(benchmark::State& state) {
    const auto t = extremal(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_family_serial(t.word, t.family));
}

void BM_VerifyFamilyParallel(benchmark::State& state) {
    const auto t = extremal(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(verify_family(t.word, t.family));
}

}  // namespace

BENCHMARK(BM_ExpandSerial)->Args({4096, 6})->Args({32768, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpandParallel)->Args({4096, 6})->Args({32768, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyFamilySerial)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyFamilyParallel)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
