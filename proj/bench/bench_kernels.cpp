// Serial reference vs. OpenMP kernels on the hot paths: dense gate
// application, Pauli expectation, and a full fabric sweep.

#include "qfab/fabric.hpp"
#include "qfab/gates.hpp"
#include "qfab/pauli.hpp"
#include "qfab/rng.hpp"
#include "qfab/symmetry.hpp"

#include <benchmark/benchmark.h>

using namespace qfab;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
    Rng rng(seed);
    StateVector s(n);
    for (double& a : s.amp) a = rng.gaussian();
    s.normalize();
    return s;
}

void bm_apply_gate_serial(benchmark::State& state) {
    const int n = int(state.range(0));
    StateVector psi = random_state(n, 1);
    const GateMatrix u = reference_matrix(GateKind::QNP_OR, std::vector<double>{0.43});
    const int wires[4] = {1, 2, 3, 4};
    for (auto _ : state) {
        kernels::apply_dense_serial(psi.amp, n, u, wires);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(psi.dim()));
}

void bm_apply_gate_parallel(benchmark::State& state) {
    const int n = int(state.range(0));
    StateVector psi = random_state(n, 1);
    const GateMatrix u = reference_matrix(GateKind::QNP_OR, std::vector<double>{0.43});
    const int wires[4] = {1, 2, 3, 4};
    for (auto _ : state) {
        kernels::apply_dense_parallel(psi.amp, n, u, wires);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(psi.dim()));
}

void bm_expectation_serial(benchmark::State& state) {
    const int n = int(state.range(0));
    const StateVector psi = random_state(n, 2);
    const PauliSum s2 = s_squared_pauli(n / 2);
    set_parallel_kernels(false);
    double acc = 0;
    for (auto _ : state) acc += expectation(psi, s2);
    set_parallel_kernels(true);
    benchmark::DoNotOptimize(acc);
}

void bm_expectation_parallel(benchmark::State& state) {
    const int n = int(state.range(0));
    const StateVector psi = random_state(n, 2);
    const PauliSum s2 = s_squared_pauli(n / 2);
    set_parallel_kernels(true);
    double acc = 0;
    for (auto _ : state) acc += expectation(psi, s2);
    benchmark::DoNotOptimize(acc);
}

void bm_fabric_sweep(benchmark::State& state) {
    const int M = int(state.range(0));
    FabricSpec spec{FabricKind::Q, M, 2 * M, PiGate::identity, kDefaultGateOrder};
    const Circuit circuit = expand(spec);
    Rng rng(3);
    std::vector<double> params(std::size_t(fabric_param_count(spec)), 0.0);
    for (double& v : params) v = rng.uniform(-1, 1);
    StateVector psi = reference_state(M, M / 2, M / 2);
    for (auto _ : state) {
        apply_circuit(psi, circuit, params);
        benchmark::ClobberMemory();
    }
}

} // namespace

BENCHMARK(bm_apply_gate_serial)->Arg(10)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_apply_gate_parallel)->Arg(10)->Arg(14)->Arg(18)->Arg(20);
BENCHMARK(bm_expectation_serial)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bm_expectation_parallel)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(bm_fabric_sweep)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
