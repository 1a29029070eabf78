#include "qfab/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qfab {

CircuitObjective Objective::compile() const {
    Circuit circuit = expand(fabric);
    const int n = fabric_param_count(fabric);
    if (kind == Kind::energy) return energy_objective(std::move(circuit), hamiltonian, reference, n);
    return overlap_objective(std::move(circuit), target, reference, n);
}

Objective energy_vqe(FabricSpec fabric, PauliSum hamiltonian, StateVector reference) {
    Objective o;
    o.kind = Objective::Kind::energy;
    o.fabric = fabric;
    o.hamiltonian = std::move(hamiltonian);
    o.reference = std::move(reference);
    return o;
}

Objective overlap_vqe(FabricSpec fabric, StateVector target, StateVector reference) {
    Objective o;
    o.kind = Objective::Kind::overlap;
    o.fabric = fabric;
    o.target = std::move(target);
    o.reference = std::move(reference);
    return o;
}

double evaluate(const Objective& obj, const ParamVector& params) {
    const CircuitObjective c = obj.compile();
    if (int(params.values.size()) != c.n_params)
        throw std::invalid_argument("evaluate: parameter count mismatch");
    return c.value(params.values);
}

MinimizeResult minimize(const Objective& obj, ParamVector init, const OptimizerConfig& config,
                        const EpochObserver& observer) {
    const CircuitObjective c = obj.compile();
    if (int(init.values.size()) != c.n_params)
        throw std::invalid_argument("minimize: parameter count mismatch");
    auto fn = [&](const std::vector<double>& x, std::vector<double>& grad) {
        grad = analytic_gradient(c, x);
        return c.value(x);
    };
    LbfgsResult r = lbfgs_minimize(fn, init.values, config, observer);
    MinimizeResult out;
    out.params.values = std::move(r.x);
    out.params.layout = init.layout.empty() ? fabric_layout(obj.fabric) : std::move(init.layout);
    out.value = r.f;
    out.trace = std::move(r.trace);
    out.n_evaluations = r.n_evaluations;
    return out;
}

ParamVector random_params(const FabricSpec& spec, std::uint64_t seed, double sigma) {
    Rng rng(seed);
    ParamVector pv;
    pv.layout = fabric_layout(spec);
    pv.values.resize(pv.layout.size());
    for (double& v : pv.values) v = sigma * rng.gaussian();
    return pv;
}

OverlapRun haar_overlap_run(const IrrepKey& key, FabricSpec fabric, std::uint64_t seed,
                            const OptimizerConfig& config, int n_restarts) {
    if (fabric.M != key.M)
        throw std::invalid_argument("haar_overlap_run: fabric and irrep sizes differ");
    const StateVector target = haar_random_irrep_state(key, Rng::derive(seed, 0));
    const StateVector input = haar_random_irrep_state(key, Rng::derive(seed, 1));
    const Objective obj = overlap_vqe(fabric, target, input);

    OverlapRun best;
    bool have = false;
    for (int r = 0; r <= n_restarts; ++r) {
        ParamVector init = random_params(fabric, Rng::derive(seed, 2 + std::uint64_t(r)));
        MinimizeResult res = minimize(obj, std::move(init), config);
        if (!have || res.value < best.infidelity) {
            have = true;
            best.infidelity = res.value;
            best.epochs = res.trace.epochs.empty() ? 0 : res.trace.epochs.back().epoch;
            best.status = res.trace.status;
            best.result = std::move(res);
        }
    }
    return best;
}

std::vector<SweepRow> depth_sweep(const SweepProblem& problem, std::span<const int> depths,
                                  std::span<const InitStrategy> strategies,
                                  std::span<const std::uint64_t> seeds,
                                  const OptimizerConfig& config, int n_restarts, int jobs) {
    struct Task {
        int depth;
        InitStrategy strategy;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int d : depths)
        for (InitStrategy s : strategies)
            for (std::uint64_t seed : seeds) tasks.push_back({d, s, seed});

    std::vector<SweepRow> rows(tasks.size());
    const StateVector reference =
        reference_state(problem.irrep.M, problem.irrep.n_alpha, problem.irrep.n_beta);

#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t ti = 0; ti < std::int64_t(tasks.size()); ++ti) {
        const Task& task = tasks[std::size_t(ti)];
        FabricSpec spec = problem.fabric_base;
        spec.n_layers = task.depth;
        SweepRow row;
        row.depth = task.depth;
        row.strategy = task.strategy;
        row.seed = task.seed;
        bool have = false;
        for (int r = 0; r <= n_restarts; ++r) {
            FabricSpec run_spec = spec;
            ParamVector init = initialize(run_spec, task.strategy);
            // Seeded perturbation: strategy-exact at r = 0 with seed 0.
            if (task.seed != 0 || r > 0) {
                Rng rng(Rng::derive(task.seed, std::uint64_t(r)));
                for (double& v : init.values) v += 0.1 * rng.gaussian();
            }
            const Objective obj = energy_vqe(run_spec, problem.hamiltonian, reference);
            MinimizeResult res = minimize(obj, std::move(init), config);
            if (!have || res.value < row.terminal_value) {
                have = true;
                row.terminal_value = res.value;
                row.terminal_error = res.value - problem.reference_energy;
                row.epochs = res.trace.epochs.empty() ? 0 : res.trace.epochs.back().epoch;
                row.status = res.trace.status;
            }
        }
        row.n_params = fabric_param_count(spec);
        rows[std::size_t(ti)] = row;
    }
    return rows;
}

int seniority(std::uint64_t index, int M) {
    int count = 0;
    for (int p = 0; p < M; ++p) {
        const int a = int((index >> (2 * p)) & 1);
        const int b = int((index >> (2 * p + 1)) & 1);
        count += (a + b == 1);
    }
    return count;
}

std::vector<SpectrumEntry> amplitude_spectrum(const StateVector& state, SpectrumOrder order,
                                              const StateVector* reference) {
    const int M = state.n_qubits / 2;
    std::vector<SpectrumEntry> entries(state.dim());
    for (std::uint64_t i = 0; i < state.dim(); ++i)
        entries[i] = {i, state.amp[i] * state.amp[i], seniority(i, M)};
    if (order == SpectrumOrder::sorted_desc) {
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            if (a.probability != b.probability) return a.probability > b.probability;
            return a.index < b.index;
        });
    } else {
        if (!reference)
            throw std::invalid_argument("amplitude_spectrum: fci_consistent needs a reference");
        if (reference->n_qubits != state.n_qubits)
            throw std::invalid_argument("amplitude_spectrum: reference dimension mismatch");
        std::vector<std::uint64_t> idx(state.dim());
        for (std::uint64_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::uint64_t a, std::uint64_t b) {
            const double pa = reference->amp[a] * reference->amp[a];
            const double pb = reference->amp[b] * reference->amp[b];
            if (pa != pb) return pa > pb;
            return a < b;
        });
        std::vector<SpectrumEntry> ordered(entries.size());
        for (std::size_t i = 0; i < idx.size(); ++i) ordered[i] = entries[idx[i]];
        entries = std::move(ordered);
    }
    return entries;
}

} // namespace qfab
