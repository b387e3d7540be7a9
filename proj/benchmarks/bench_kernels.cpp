// bench_kernels.cpp — microbenchmarks for the hot numerical paths

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qreg/bessel.hpp"
#include "qreg/decay.hpp"
#include "qreg/oracle.hpp"

namespace {

const qreg::RegisterGeometry geometry(1000, 50e-9, 400e-9, 5e3);
const qreg::BathModel piezo = qreg::BathModel::piezo(0.03, 5e10);

void BM_DecayKernelNearest(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(qreg::q2_r(piezo, geometry, 0, 5e-12));
}
BENCHMARK(BM_DecayKernelNearest);

void BM_DecayKernelSeparated(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qreg::q2_r(piezo, geometry, r, 5e-12));
}
BENCHMARK(BM_DecayKernelSeparated)->Arg(4)->Arg(16)->Arg(64);

void BM_GateKernel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(qreg::q_fermionic(9.3e-8, 1.3e15, 0.0, 1e-11, 2));
}
BENCHMARK(BM_GateKernel);

void BM_ToeplitzQuadratic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const qreg::RegisterGeometry geom(n, 50e-9, 400e-9, 5e3);
    qreg::KernelCache cache;
    const qreg::DecayProfile profile =
        qreg::decay_profile_truncated(piezo, geom, 20e-12, &cache);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = dist(rng);
    for (auto& v : y) v = dist(rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(qreg::toeplitz_quadratic(profile, 2, x, y));
}
BENCHMARK(BM_ToeplitzQuadratic)->Arg(16)->Arg(128)->Arg(1024);

void BM_LatticeModeSum(benchmark::State& state) {
    const qreg::RegisterGeometry toy(3, 0.5, 4.0, 1.0);
    const qreg::BathModel bath = qreg::BathModel::piezo(1.0, 1.0);
    const qreg::KLattice lattice = qreg::KLattice::cubic(16.0, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(qreg::oracle_q(lattice, bath, toy, 1, 1.0, 2));
}
BENCHMARK(BM_LatticeModeSum);

void BM_BesselJ0(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        x += 0.37;
        if (x > 900.0) x -= 900.0;
        benchmark::DoNotOptimize(qreg::bessel_j0(x));
    }
}
BENCHMARK(BM_BesselJ0);

}  // namespace

BENCHMARK_MAIN();
