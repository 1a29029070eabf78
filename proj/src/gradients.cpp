#include "qfab/gradients.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfab {

namespace {
constexpr double kPi = std::numbers::pi;
}

StateVector CircuitObjective::output_state(std::span<const double> params) const {
    StateVector psi = reference;
    apply_circuit(psi, circuit, params);
    return psi;
}

double CircuitObjective::value(std::span<const double> params) const {
    if (int(params.size()) != n_params)
        throw std::invalid_argument("CircuitObjective: parameter count mismatch");
    const StateVector psi = output_state(params);
    if (kind == Kind::Energy) return expectation(psi, hamiltonian);
    const double g = overlap(target, psi);
    return 1.0 - g * g;
}

CircuitObjective energy_objective(Circuit circuit, PauliSum hamiltonian, StateVector reference,
                                  int n_params) {
    CircuitObjective o;
    o.kind = CircuitObjective::Kind::Energy;
    o.hamiltonian = std::move(hamiltonian);
    o.circuit = std::move(circuit);
    o.reference = std::move(reference);
    o.n_params = n_params;
    return o;
}

CircuitObjective overlap_objective(Circuit circuit, StateVector target, StateVector reference,
                                   int n_params) {
    CircuitObjective o;
    o.kind = CircuitObjective::Kind::Overlap;
    o.target = std::move(target);
    o.circuit = std::move(circuit);
    o.reference = std::move(reference);
    o.n_params = n_params;
    return o;
}

std::vector<double> analytic_gradient(const CircuitObjective& obj,
                                      std::span<const double> params) {
    if (int(params.size()) != obj.n_params)
        throw std::invalid_argument("analytic_gradient: parameter count mismatch");
    std::vector<double> grad(params.size(), 0.0);

    StateVector psi = obj.reference;
    apply_circuit(psi, obj.circuit, params);

    StateVector lambda(psi.n_qubits);
    double factor = 0.0;
    if (obj.kind == CircuitObjective::Kind::Energy) {
        lambda = apply(obj.hamiltonian, psi);
        factor = 2.0;
    } else {
        lambda = obj.target;
        factor = -2.0 * overlap(obj.target, psi);
    }

    for (auto it = obj.circuit.rbegin(); it != obj.circuit.rend(); ++it) {
        const GateInstance& g = *it;
        bool parametrized = false;
        for (const AngleExpr& a : g.angles) parametrized |= !a.is_constant();
        if (parametrized) {
            if (g.angles.size() != 1)
                throw std::invalid_argument(
                    std::string("analytic_gradient: no per-slot generator for ") +
                    kind_name(g.kind));
            StateVector tmp = psi;
            apply_gate_wires(tmp, generator(g.kind), g.wires);
            const double val = overlap(lambda, tmp);
            const AngleExpr& a = g.angles.front();
            grad[std::size_t(a.param)] += factor * a.scale * val;
        }
        const GateMatrix inv = instance_matrix(g, params).transpose();
        apply_gate_wires(psi, inv, g.wires);
        apply_gate_wires(lambda, inv, g.wires);
    }
    return grad;
}

const char* rule_class_name(RuleClass c) {
    switch (c) {
        case RuleClass::two_term: return "two_term";
        case RuleClass::four_term: return "four_term";
        default: return "unsupported";
    }
}

GeneratorReport classify_generator(GateKind kind) {
    const GateMatrix A = generator(kind); // throws unless one-parameter
    const int d = A.dim();
    // Q = 2i A is Hermitian with zero real part; its spectrum doubles in the
    // real symmetric embedding [[0, -2A], [2A, 0]].
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            big(r, d + c) = -2.0 * A.at(r, c);
            big(d + r, c) = 2.0 * A.at(r, c);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(big);
    const Eigen::VectorXd all = solver.eigenvalues();

    GeneratorReport rep;
    // Each eigenvalue appears twice; keep one copy per pair.
    for (int i = 0; i < all.size(); i += 2) {
        if (std::abs(all(i) - all(i + 1)) > 1e-8)
            throw std::logic_error("classify_generator: unpaired eigenvalue");
        rep.eigenvalues.push_back(all(i));
    }
    double trace = 0.0;
    for (double e : rep.eigenvalues) trace += e;
    rep.shift_c = trace / d;

    const double tol = 1e-10;
    double a = 0.0;
    for (double e : rep.eigenvalues) a = std::max(a, std::abs(e - rep.shift_c));
    rep.scale_a = a;
    bool has_zero = false, has_other = false, has_edge = false;
    for (double e : rep.eigenvalues) {
        const double x = e - rep.shift_c;
        if (std::abs(x) < tol)
            has_zero = true;
        else if (std::abs(std::abs(x) - a) < tol)
            has_edge = true;
        else
            has_other = true;
    }
    if (has_other || a < tol)
        rep.rule_class = RuleClass::unsupported;
    else if (has_zero)
        rep.rule_class = RuleClass::four_term;
    else
        rep.rule_class = has_edge ? RuleClass::two_term : RuleClass::unsupported;
    return rep;
}

ShiftRule make_shift_rule(RuleClass cls, double alpha, std::optional<double> beta,
                          bool variance_optimal) {
    ShiftRule rule;
    rule.cls = cls;
    if (cls == RuleClass::two_term) {
        if (variance_optimal) alpha = kPi / 2;
        const double s = std::sin(alpha);
        if (std::abs(s) < 1e-12)
            throw std::invalid_argument("make_shift_rule: alpha must avoid multiples of pi");
        const double d = 1.0 / (2.0 * s);
        rule.terms = {{d, alpha}, {-d, -alpha}};
        return rule;
    }
    if (cls == RuleClass::four_term) {
        double b;
        if (variance_optimal) {
            alpha = kPi / 2;
            b = 3 * kPi / 2;
        } else {
            if (!beta) throw std::invalid_argument("make_shift_rule: four-term needs beta");
            b = *beta;
        }
        const double ca = std::cos(alpha / 2), cb = std::cos(b / 2);
        const double sa2 = std::sin(alpha), sb2 = std::sin(b);
        if (std::abs(cb - ca) < 1e-12)
            throw std::invalid_argument("make_shift_rule: degenerate angle pair");
        if (std::abs(sa2) < 1e-12)
            throw std::invalid_argument("make_shift_rule: alpha must avoid multiples of pi");
        const double d2 = (ca - 1.0) / (4.0 * std::sin(b / 2) * (cb - ca));
        const double d1 = (0.5 + d2 * sb2) / sa2;
        rule.terms = {{d1, alpha}, {-d1, -alpha}, {-d2, b}, {d2, -b}};
        return rule;
    }
    throw std::invalid_argument("make_shift_rule: no rule of three or more distinct shifts exists "
                                "for these generators");
}

namespace {

struct SlotGate {
    std::size_t gate_index;
    double scale;
};

SlotGate find_slot_gate(const CircuitObjective& obj, int slot) {
    std::optional<SlotGate> found;
    for (std::size_t i = 0; i < obj.circuit.size(); ++i) {
        for (const AngleExpr& a : obj.circuit[i].angles) {
            if (!a.is_constant() && a.param == slot) {
                if (found)
                    throw std::invalid_argument(
                        "shift_gradient: slot feeds several gates; use the analytic gradient");
                if (obj.circuit[i].angles.size() != 1)
                    throw std::invalid_argument("shift_gradient: multi-parameter gate");
                found = SlotGate{i, a.scale};
            }
        }
    }
    if (!found) throw std::invalid_argument("shift_gradient: slot not used by the circuit");
    return *found;
}

double value_with_gate_skipped(const CircuitObjective& obj, std::span<const double> params,
                               std::size_t skip) {
    StateVector psi = obj.reference;
    for (std::size_t i = 0; i < obj.circuit.size(); ++i) {
        if (i == skip) continue;
        apply_instance(psi, obj.circuit[i], params);
    }
    if (obj.kind == CircuitObjective::Kind::Energy) return expectation(psi, obj.hamiltonian);
    const double g = overlap(obj.target, psi);
    return 1.0 - g * g;
}

} // namespace

double shift_gradient(const CircuitObjective& obj, std::span<const double> params, int slot,
                      const ShiftRule& rule, bool elide_gate) {
    if (slot < 0 || slot >= obj.n_params) throw std::out_of_range("shift_gradient: bad slot");
    const SlotGate sg = find_slot_gate(obj, slot);
    const GateInstance& gate = obj.circuit[sg.gate_index];
    const GeneratorReport rep = classify_generator(gate.kind);
    if (rep.rule_class != rule.cls)
        throw std::invalid_argument(std::string("shift_gradient: rule class ") +
                                    rule_class_name(rule.cls) + " does not match gate " +
                                    kind_name(gate.kind) + " (" +
                                    rule_class_name(rep.rule_class) + ")");
    const double a = rep.scale_a;
    const AngleExpr& expr = gate.angles.front();
    const double angle_now = expr.eval(params);

    ShiftRule effective = rule;
    std::optional<double> elide_shift;
    if (elide_gate) {
        // Re-derive the rule so one evaluation lands on gate angle zero.
        const double alpha = -angle_now * a; // in the rule's unit-spectrum units
        if (std::abs(std::sin(alpha)) < 1e-12)
            throw std::invalid_argument("shift_gradient: cannot elide at a multiple of pi");
        if (rule.cls == RuleClass::two_term) {
            effective = make_shift_rule(RuleClass::two_term, alpha);
        } else {
            double beta = kPi; // default second angle when the rule's cannot be reused
            for (const auto& [d, s] : rule.terms)
                if (std::abs(std::abs(s) - std::abs(alpha)) > 1e-9) beta = std::abs(s);
            effective = make_shift_rule(RuleClass::four_term, alpha, beta);
        }
        elide_shift = alpha;
    }

    std::vector<double> shifted(params.begin(), params.end());
    double acc = 0.0;
    for (const auto& [d, s] : effective.terms) {
        const double theta_shift = s / (a * sg.scale);
        shifted[std::size_t(slot)] = params[std::size_t(slot)] + theta_shift;
        double val;
        if (elide_shift && std::abs(s - *elide_shift) < 1e-12) {
            // gate angle is exactly zero here: drop the gate instead
            val = value_with_gate_skipped(obj, shifted, sg.gate_index);
        } else {
            val = obj.value(shifted);
        }
        acc += d * val;
    }
    return acc * a * sg.scale;
}

VarianceReport shot_noise_variance(const ShiftRule& rule, double V, std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("shot_noise_variance: N > 0 required");
    if (V < 0) throw std::invalid_argument("shot_noise_variance: V >= 0 required");
    double total = 0.0;
    for (const auto& [d, s] : rule.terms) total += std::abs(d);
    VarianceReport rep;
    rep.sigma2 = total * total * V / double(N);
    for (const auto& [d, s] : rule.terms)
        rep.allocation.push_back(double(N) * std::abs(d) / total);
    return rep;
}

double biased_prefactor(double grad_estimate, double V, double N) {
    if (N <= 0) throw std::invalid_argument("biased_prefactor: N > 0 required");
    if (grad_estimate == 0.0) return 0.0;
    return 1.0 / (1.0 + V / (N * grad_estimate * grad_estimate));
}

double noisy_shift_estimate(const std::function<double(double)>& f, double theta,
                            const ShiftRule& rule, double V, std::uint64_t N, Rng& rng) {
    const VarianceReport alloc = shot_noise_variance(rule, V, N);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.terms.size(); ++i) {
        const auto& [d, s] = rule.terms[i];
        const double sigma = std::sqrt(V / alloc.allocation[i]);
        acc += d * (f(theta + s) + sigma * rng.gaussian());
    }
    return acc;
}

} // namespace qfab
