#include <benchmark/benchmark.h>

#include "pscat/limit_laws.hpp"
#include "pscat/multiplicity.hpp"
#include "pscat/polynomials.hpp"
#include "pscat/rng.hpp"
#include "pscat/spectrum.hpp"
#include "pscat/torus.hpp"
#include "pscat/wavevector.hpp"

using namespace pscat;

static void BM_build_table(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_table(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_build_table)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_deterministic_moment(benchmark::State& state) {
    auto lat = build_lattice(Rational(1), Rational(90));
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(deterministic_moment(lat, 17.0, p));
}
BENCHMARK(BM_deterministic_moment)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_na_bruteforce(benchmark::State& state) {
    RngStream rng(5, 0);
    auto sys = sample_system({3.0, 11.0, 20.0}, {2, 2, 1}, Variant::square_symmetric, rng);
    FiniteSupportSequence a{{1, 2}, {2, 2}, {3, 2}};
    for (auto _ : state) benchmark::DoNotOptimize(na_bruteforce(sys, a));
}
BENCHMARK(BM_na_bruteforce)->Unit(benchmark::kMillisecond);

static void BM_sample_spectrum(benchmark::State& state) {
    auto m = MultiplicityFunction::power(1.0, 1.0 / 3.0);
    const double tau = static_cast<double>(state.range(0));
    std::uint64_t r = 0;
    for (auto _ : state) {
        RngStream rng(1, r++);
        benchmark::DoNotOptimize(sample_spectrum(m, window_around(tau, 0.5), rng));
    }
}
BENCHMARK(BM_sample_spectrum)->Arg(10000)->Arg(1000000)->Arg(100000000)->Unit(benchmark::kMicrosecond);

static void BM_psi(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    std::vector<double> x(p);
    for (int q = 0; q < p; ++q) x[q] = q % 2 ? -30.0 : 120.0;
    for (auto _ : state) benchmark::DoNotOptimize(psi_eval(p, x));
}
BENCHMARK(BM_psi)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_psi_contour(benchmark::State& state) {
    std::vector<double> x = {399.421, 24.9374, -0.0119829};
    for (auto _ : state) benchmark::DoNotOptimize(psi_eval_contour(3, x));
}
BENCHMARK(BM_psi_contour)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
