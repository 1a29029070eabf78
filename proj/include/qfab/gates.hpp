#pragma once

#include "qfab/state_vector.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qfab {

/// Gate catalog. The quantum-number-preserving (QNP) 4-qubit gates act on one
/// spatial-orbital pair in interleaved qubit order; their matrices are indexed
/// with local wire j as bit j (wire 0 = 0-alpha, 1 = 0-beta, 2 = 1-alpha,
/// 3 = 1-beta).
enum class GateKind {
    RY,
    H,
    X,
    CNOT,
    CZ,
    CRY,
    SWAP,
    FSWAP,
    G,
    QNP_OR,
    QNP_PX,
    QNP_1p,
    QNP_1h,
    QNP_A1B0,
    QNP_A0B1,
    QNP_A2B1,
    QNP_A1B2,
    QNP_PBU,
    QNP_PBL,
    OFSWAP,
    F,
    Q,
    SO4,
    HammingGivens,
    Hamming8,
};

int arity(GateKind kind);
int n_params(GateKind kind);
const char* kind_name(GateKind kind);
GateKind kind_from_name(const std::string& name);
std::vector<GateKind> all_gate_kinds();

/// Exact reference matrix. Angle conventions: G, QNP_PX and the other
/// one-parameter QNP gates rotate with cos(theta/2); QNP_OR uses cos(phi)
/// directly; F takes (theta_1p, theta_1h, x1, x2, x3) with the singlet block
/// given by the SO(3) exponential of the antisymmetric matrix holding x.
GateMatrix reference_matrix(GateKind kind, std::span<const double> params);

/// A = dU/dtheta at theta = 0 for one-parameter kinds. Every one-parameter
/// kind here is a one-parameter subgroup, so dU/dtheta(theta) = A * U(theta).
GateMatrix generator(GateKind kind);

/// angle = scale * params[param] + offset; param < 0 means a constant angle.
struct AngleExpr {
    double scale = 0.0;
    double offset = 0.0;
    int param = -1;

    double eval(std::span<const double> params) const {
        return param >= 0 ? scale * params[std::size_t(param)] + offset : offset;
    }
    bool is_constant() const { return param < 0; }
};

/// One gate in a circuit. `wires[i]` is the physical qubit carrying local
/// index bit i of the kind's matrix. `angles` has n_params(kind) entries.
struct GateInstance {
    GateKind kind;
    std::vector<int> wires;
    std::vector<AngleExpr> angles;

    GateInstance(GateKind k, std::vector<int> w, std::vector<AngleExpr> a = {})
        : kind(k), wires(std::move(w)), angles(std::move(a)) {}
};

using Circuit = std::vector<GateInstance>;

GateMatrix instance_matrix(const GateInstance& g, std::span<const double> params);
void apply_instance(StateVector& state, const GateInstance& g, std::span<const double> params);
void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const double> params);
void apply_circuit_inverse(StateVector& state, const Circuit& circuit,
                           std::span<const double> params);

/// Expands a circuit over `n_qubits` into its dense matrix by columns.
/// Intended for small qubit counts (tests, decomposition checks).
GateMatrix circuit_matrix(const Circuit& circuit, int n_qubits, std::span<const double> params);

/// A realization of a gate kind as elementary steps over local wires
/// 0..arity-1, with step angles linear in the target's parameters.
struct Decomposition {
    GateKind target;
    std::string variant;
    Circuit steps;

    int two_qubit_count() const;
    int one_qubit_count() const;
    int depth() const;
    GateMatrix to_matrix(std::span<const double> params) const;
};

/// Primary decomposition of `kind`; throws if none is catalogued.
Decomposition decomposition(GateKind kind);

/// Every catalogued variant (primary first). Empty for kinds without one.
std::vector<Decomposition> all_decompositions(GateKind kind);

struct CircuitStats {
    int depth = 0;
    int two_qubit_count = 0;
    int one_qubit_count = 0;
};

/// Greedy ASAP layering: each gate occupies the earliest layer where all its
/// wires are free. With `decompose` set, catalogued gates are expanded to
/// elementary steps first (recursively).
CircuitStats circuit_stats(const Circuit& circuit, bool decompose);

/// Replaces every step that has a catalogued decomposition by its expansion,
/// rewriting angle expressions onto the original parameter slots. Gates
/// without a decomposition are kept as-is.
Circuit decompose_circuit(const Circuit& circuit);

} // namespace qfab
