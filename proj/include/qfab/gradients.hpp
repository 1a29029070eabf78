#pragma once

#include "qfab/gates.hpp"
#include "qfab/pauli.hpp"
#include "qfab/rng.hpp"
#include "qfab/state_vector.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qfab {

/// Circuit-level objective: energy <ref|U^T H U|ref> or overlap infidelity
/// 1 - <target|U|ref>^2. The parameter count covers every slot referenced by
/// the circuit's angle expressions.
struct CircuitObjective {
    enum class Kind { Energy, Overlap };

    Kind kind = Kind::Energy;
    PauliSum hamiltonian;
    StateVector target;
    Circuit circuit;
    StateVector reference;
    int n_params = 0;

    StateVector output_state(std::span<const double> params) const;
    double value(std::span<const double> params) const;
};

CircuitObjective energy_objective(Circuit circuit, PauliSum hamiltonian, StateVector reference,
                                  int n_params);
CircuitObjective overlap_objective(Circuit circuit, StateVector target, StateVector reference,
                                   int n_params);

/// Exact gradient via one forward and one backward statevector sweep;
/// O(#gates) gate applications total. Parameter slots may feed several gates
/// (contributions accumulate through the angle expressions' scales).
std::vector<double> analytic_gradient(const CircuitObjective& obj,
                                      std::span<const double> params);

enum class RuleClass { two_term, four_term, unsupported };
const char* rule_class_name(RuleClass c);

/// Linear combination of objective evaluations at shifted angles:
/// d f / d theta = sum_i d_i f(theta + s_i).
struct ShiftRule {
    RuleClass cls = RuleClass::unsupported;
    std::vector<std::pair<double, double>> terms; // (coefficient, shift)
};

struct GeneratorReport {
    std::vector<double> eigenvalues; // spectrum of Q = 2i dU/dtheta|0
    double shift_c = 0.0;            // tr(Q) / 2^n
    double scale_a = 0.0;            // spectral half-width after centering
    RuleClass rule_class = RuleClass::unsupported;
};

/// Spectrum test for one-parameter gates with U(theta) = exp(-i theta Q / 2):
/// centered spectrum in {-a, +a} gives the two-term rule, {-a, 0, +a} the
/// four-term rule, anything else is unsupported (analytic gradient only).
GeneratorReport classify_generator(GateKind kind);

/// Builds a shift rule. Two-term: coefficients +-1/(2 sin alpha) at +-alpha.
/// Four-term: solves 1/4 = d1 sin(alpha/2) - d2 sin(beta/2) and
/// 1/2 = d1 sin(alpha) - d2 sin(beta). With variance_optimal the stationary
/// choice alpha = pi/2 (and beta = 3pi/2 for four-term) is returned.
ShiftRule make_shift_rule(RuleClass cls, double alpha, std::optional<double> beta = std::nullopt,
                          bool variance_optimal = false);

/// Parameter-shift derivative of `obj` with respect to `slot`. The slot must
/// drive exactly one gate whose classification matches rule.cls. With
/// elide_gate the rule is re-derived with one shift landing on angle zero and
/// that evaluation runs with the gate dropped from the circuit.
double shift_gradient(const CircuitObjective& obj, std::span<const double> params, int slot,
                      const ShiftRule& rule, bool elide_gate = false);

struct VarianceReport {
    double sigma2 = 0.0;
    std::vector<double> allocation; // shots per rule term
};

/// Constant-variance shot-noise model: variance of the rule estimator at the
/// optimal allocation (shots proportional to |d_i|), sigma^2 = (sum|d_i|)^2 V/N.
VarianceReport shot_noise_variance(const ShiftRule& rule, double V, std::uint64_t N);

/// lambda* = (1 + V / (N grad^2))^-1; scaling the estimator by lambda*
/// minimizes the mean squared error under the constant-variance model.
double biased_prefactor(double grad_estimate, double V, double N);

/// One noisy estimate of f'(theta): each rule term is evaluated once and
/// perturbed by Gaussian noise of variance V / n_i at the optimal allocation.
double noisy_shift_estimate(const std::function<double(double)>& f, double theta,
                            const ShiftRule& rule, double V, std::uint64_t N, Rng& rng);

} // namespace qfab
