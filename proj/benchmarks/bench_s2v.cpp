#include <benchmark/benchmark.h>

#include <cstdint>

#include <s2v/congruence_class.hpp>
#include <s2v/level_tree.hpp>
#include <s2v/residue.hpp>
#include <s2v/stirling.hpp>
#include <s2v/stirling5.hpp>

namespace {

// Closed-form valuation at n = 2^bits + 28; cost should grow polylog in n.
void BM_fast_valuation(benchmark::State& state) {
    const s2v::Integer n =
        (s2v::Integer(1) << static_cast<unsigned>(state.range(0))) + 28;
    for (auto _ : state) benchmark::DoNotOptimize(s2v::v2_stirling5(n));
}
BENCHMARK(BM_fast_valuation)->Arg(16)->Arg(64)->Arg(256)->Arg(4096);

// The exact streaming oracle for the same column, for contrast.
void BM_exact_row_sweep(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        s2v::StirlingRowPair rows(5);
        rows.advance_to(n);
        benchmark::DoNotOptimize(rows.at(5));
    }
}
BENCHMARK(BM_exact_row_sweep)->Arg(200)->Arg(1000)->Arg(4000);

// Wide rows: cost per advance is linear in the stored column count.
void BM_wide_row(benchmark::State& state) {
    const auto k_max = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        s2v::StirlingRowPair rows(k_max);
        rows.advance_to(2 * k_max);
        benchmark::DoNotOptimize(rows.at(k_max));
    }
}
BENCHMARK(BM_wide_row)->Arg(64)->Arg(256)->Arg(1024);

void BM_pow2mod_word(benchmark::State& state) {
    const s2v::Integer exp = (s2v::Integer(1) << 62) + 12345;
    for (auto _ : state)
        benchmark::DoNotOptimize(s2v::detail::pow2mod_word(5, exp, 62));
}
BENCHMARK(BM_pow2mod_word);

void BM_pow2mod_big(benchmark::State& state) {
    const auto M = static_cast<unsigned>(state.range(0));
    const s2v::Integer exp = (s2v::Integer(1) << 62) + 12345;
    for (auto _ : state)
        benchmark::DoNotOptimize(s2v::detail::pow2mod_big(5, exp, M));
}
BENCHMARK(BM_pow2mod_big)->Arg(62)->Arg(256)->Arg(4096);

void BM_tree_exact(benchmark::State& state) {
    const auto depth = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        const auto tree = s2v::build_level_tree(
            5, depth, s2v::ClassifyPolicy::exact_periodic());
        benchmark::DoNotOptimize(tree.nodes.size());
    }
}
BENCHMARK(BM_tree_exact)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
