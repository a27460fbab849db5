#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "seatcouples/solver.hpp"

using namespace seatcouples;

namespace {

std::vector<Int> random_units(Int N, Int count, std::mt19937& rng) {
    std::vector<Int> ds;
    ds.reserve(static_cast<std::size_t>(count));
    while (static_cast<Int>(ds.size()) < count) {
        const Int d = 1 + static_cast<Int>(rng() % static_cast<unsigned>(N - 1));
        if (std::gcd(d, N) == 1) ds.push_back(d);
    }
    return ds;
}

std::vector<Int> random_zero_sum(Int n, std::mt19937& rng) {
    std::vector<Int> values(static_cast<std::size_t>(n));
    Int sum = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        values[i] = static_cast<Int>(rng() % static_cast<unsigned>(n));
        sum = (sum + values[i]) % n;
    }
    values.back() = canonicalize(-sum, n).value();
    return values;
}

void BM_Solve(benchmark::State& state) {
    const Int N = static_cast<Int>(state.range(0));
    std::mt19937 rng(static_cast<unsigned>(N));
    const Instance inst = validate_instance(N, random_units(N, N / 2, rng));
    for (auto _ : state) {
        AssignedPartition ap = solve(inst);
        benchmark::DoNotOptimize(ap.partition.pairs.data());
    }
    state.SetItemsProcessed(state.iterations() * (N / 2));
}
BENCHMARK(BM_Solve)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_ChooseSigns(benchmark::State& state) {
    const Int N = static_cast<Int>(state.range(0));
    std::mt19937 rng(static_cast<unsigned>(N) + 1);
    const Instance inst = validate_instance(N, random_units(N, N / 2, rng));
    for (auto _ : state) {
        SignVector sv = choose_signs(inst);
        benchmark::DoNotOptimize(sv.signs.data());
    }
}
BENCHMARK(BM_ChooseSigns)->Arg(256)->Arg(1024)->Arg(4096);

void BM_HallRealize(benchmark::State& state) {
    const Int n = static_cast<Int>(state.range(0));
    std::mt19937 rng(static_cast<unsigned>(n) + 2);
    HalvedDifferences E;
    E.modulus = n;
    E.values = random_zero_sum(n, rng);
    for (Int v : E.values) ++E.multiplicity[v];
    for (auto _ : state) {
        HallSolution sol = hall_realize(E);
        benchmark::DoNotOptimize(sol.cmap.data());
    }
}
BENCHMARK(BM_HallRealize)->Arg(128)->Arg(1024)->Arg(4096);

void BM_OracleSolve(benchmark::State& state) {
    const Int N = static_cast<Int>(state.range(0));
    std::mt19937 rng(static_cast<unsigned>(N) + 3);
    const Instance inst = validate_instance(N, random_units(N, N / 2, rng));
    for (auto _ : state) {
        auto found = oracle_solve(inst);
        benchmark::DoNotOptimize(found);
    }
}
BENCHMARK(BM_OracleSolve)->Arg(16)->Arg(24);

void BM_OracleCount(benchmark::State& state) {
    const Int N = static_cast<Int>(state.range(0));
    std::mt19937 rng(static_cast<unsigned>(N) + 4);
    const Instance inst = validate_instance(N, random_units(N, N / 2, rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_count(inst));
    }
}
BENCHMARK(BM_OracleCount)->Arg(10)->Arg(12);

void BM_VerifyPartition(benchmark::State& state) {
    const Int N = static_cast<Int>(state.range(0));
    std::mt19937 rng(static_cast<unsigned>(N) + 5);
    const Instance inst = validate_instance(N, random_units(N, N / 2, rng));
    const AssignedPartition ap = solve(inst);
    for (auto _ : state) {
        VerificationReport report = verify_partition(ap.partition);
        benchmark::DoNotOptimize(report.valid);
    }
}
BENCHMARK(BM_VerifyPartition)->Arg(1024)->Arg(4096);

} // namespace

BENCHMARK_MAIN();
