#include <benchmark/benchmark.h>

#include <random>

#include "cli.hpp"

using namespace cgauss;

namespace {

Rational random_fraction(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound);
    return Rational(num(rng), den(rng));
}

RationalMatrix random_matrix(int dim, unsigned long seed) {
    std::mt19937_64 rng(seed);
    for (;;) {
        RationalMatrix m(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m.at(r, c) = random_fraction(rng, 1024);
        try {
            oracle_invert(m);
            return m;
        } catch (const SingularMatrix&) {
        }
    }
}

void BM_RationalArithmetic(benchmark::State& state) {
    std::mt19937_64 rng(1);
    Rational a = random_fraction(rng, 1L << 40);
    Rational b = random_fraction(rng, 1L << 40);
    for (auto _ : state) {
        Rational c = a * b + a - b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_RationalArithmetic);

void BM_CRealQuery(benchmark::State& state) {
    CReal x = CReal::from_rational(Rational(3, 7));
    CReal y = CReal::from_rational(Rational(-22, 5));
    CReal expr = (x + y) * (x - y) * inverse(y, Witness{0});
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Rational q = expr.approx(p);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_CRealQuery)->Arg(10)->Arg(60)->Arg(200);

void BM_Phi1(benchmark::State& state) {
    CReal x = CReal::from_rational(pow2(-static_cast<int>(state.range(0))));
    for (auto _ : state) {
        Witness w = phi1(x);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_Phi1)->Arg(4)->Arg(16)->Arg(40);

void BM_PivotInterleave(benchmark::State& state) {
    std::vector<CReal> xs{CReal::from_rational(Rational(1, 4)), CReal::from_rational(pow2(-22))};
    for (auto _ : state) {
        PivotRun r = pivot_interleaved(xs);
        benchmark::DoNotOptimize(r.result.index);
    }
}
BENCHMARK(BM_PivotInterleave);

void BM_PivotParallel(benchmark::State& state) {
    std::vector<CReal> xs{CReal::from_rational(Rational(1, 4)), CReal::from_rational(pow2(-22))};
    auto sched = conc::Scheduler::parallel();
    for (auto _ : state) {
        PivotResult r = pivotN(xs, sched);
        benchmark::DoNotOptimize(r.index);
    }
}
BENCHMARK(BM_PivotParallel);

void BM_Invert(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    RationalMatrix m = random_matrix(dim, 42);
    CMatrix a = CMatrix::from_rationals(m);
    auto sched = conc::Scheduler::interleave(1);
    for (auto _ : state) {
        CMatrix b = invert(a, sched);
        benchmark::DoNotOptimize(b.at(0, 0).approx(30));
    }
}
BENCHMARK(BM_Invert)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_OracleInvert(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    RationalMatrix m = random_matrix(dim, 42);
    for (auto _ : state) {
        RationalMatrix b = oracle_invert(m);
        benchmark::DoNotOptimize(b.at(0, 0));
    }
}
BENCHMARK(BM_OracleInvert)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
