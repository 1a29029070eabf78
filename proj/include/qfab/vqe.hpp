#pragma once

#include "qfab/fabric.hpp"
#include "qfab/gradients.hpp"
#include "qfab/hamiltonian.hpp"
#include "qfab/lbfgs.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qfab {

/// Fabric-level objective: minimize the energy of a Hamiltonian or the
/// infidelity against a target state, over the fabric's parameters applied to
/// a fixed reference state.
struct Objective {
    enum class Kind { energy, overlap };

    Kind kind = Kind::energy;
    PauliSum hamiltonian;
    StateVector target;
    FabricSpec fabric;
    StateVector reference;

    CircuitObjective compile() const;
};

Objective energy_vqe(FabricSpec fabric, PauliSum hamiltonian, StateVector reference);
Objective overlap_vqe(FabricSpec fabric, StateVector target, StateVector reference);

double evaluate(const Objective& obj, const ParamVector& params);

struct MinimizeResult {
    ParamVector params;
    double value = 0.0;
    ConvergenceTrace trace;
    int n_evaluations = 0;
};

MinimizeResult minimize(const Objective& obj, ParamVector init, const OptimizerConfig& config,
                        const EpochObserver& observer = nullptr);

/// Deterministic random fabric parameters (used by the overlap protocol and
/// multi-start runs).
ParamVector random_params(const FabricSpec& spec, std::uint64_t seed, double sigma = 0.5);

/// One overlap-protocol run: target and input states are independent random
/// states of the irrep, the fabric starts from seeded random parameters.
struct OverlapRun {
    double infidelity = 0.0;
    int epochs = 0;
    TerminalStatus status = TerminalStatus::max_epochs;
    MinimizeResult result;
};
OverlapRun haar_overlap_run(const IrrepKey& key, FabricSpec fabric, std::uint64_t seed,
                            const OptimizerConfig& config, int n_restarts = 0);

struct SweepRow {
    int depth = 0;
    int n_params = 0;
    InitStrategy strategy = InitStrategy::A;
    std::uint64_t seed = 0;
    double terminal_value = 0.0;
    double terminal_error = 0.0;
    int epochs = 0;
    TerminalStatus status = TerminalStatus::max_epochs;
};

struct SweepProblem {
    PauliSum hamiltonian;
    IrrepKey irrep;
    FabricSpec fabric_base; // n_layers overridden per row
    double reference_energy = 0.0;
};

/// One energy minimization per (depth, strategy, seed); errors are measured
/// against `reference_energy` (typically the exact ground energy). Seeded
/// rows add a random perturbation on top of the strategy initialization;
/// restarts keep the best terminal value.
std::vector<SweepRow> depth_sweep(const SweepProblem& problem, std::span<const int> depths,
                                  std::span<const InitStrategy> strategies,
                                  std::span<const std::uint64_t> seeds,
                                  const OptimizerConfig& config, int n_restarts = 0,
                                  int jobs = 1);

/// Singly-occupied spatial orbital count of a determinant.
int seniority(std::uint64_t index, int M);

enum class SpectrumOrder { sorted_desc, fci_consistent };

struct SpectrumEntry {
    std::uint64_t index = 0;
    double probability = 0.0;
    int seniority = 0;
};

/// Probability spectrum |<I|psi>|^2. `fci_consistent` orders indices by the
/// reference state's descending probabilities instead of the state's own.
std::vector<SpectrumEntry> amplitude_spectrum(const StateVector& state, SpectrumOrder order,
                                              const StateVector* reference = nullptr);

} // namespace qfab
