#pragma once

#include "qfab/gates.hpp"
#include "qfab/state_vector.hpp"

#include <array>
#include <string>
#include <vector>

namespace qfab {

enum class FabricKind { Q, F, OR_only, PX_only, SO4, HammingGivens, Hamming8 };
enum class PiGate { identity, OR_pi, OFSWAP };
enum class InitStrategy { A, B };

FabricKind fabric_kind_from_name(const std::string& name);
const char* fabric_kind_name(FabricKind k);
const char* pi_gate_name(PiGate p);
PiGate pi_gate_from_name(const std::string& name);

/// Elements of a Q gate, in application order. Default is Pi, then the pair
/// exchange, then the orbital rotation.
enum class QElement : std::uint8_t { Pi, PX, OR };
using GateOrder = std::array<QElement, 3>;
constexpr GateOrder kDefaultGateOrder{QElement::Pi, QElement::PX, QElement::OR};
GateOrder gate_order_from_string(const std::string& s);
std::string gate_order_to_string(const GateOrder& o);

/// A layered tessellation of one gate element. For the fermionic kinds
/// (Q, F, OR_only, PX_only) `M` counts spatial orbitals and the circuit acts
/// on 2M interleaved qubits; for the others `M` is the qubit count.
struct FabricSpec {
    FabricKind kind = FabricKind::Q;
    int M = 2;
    int n_layers = 1;
    PiGate pi_gate = PiGate::identity;
    GateOrder gate_order = kDefaultGateOrder;

    int n_qubits() const;
};

/// Flat parameter vector plus the (layer, gate position, local slot) layout.
struct ParamVector {
    struct SlotInfo {
        int layer;
        int gate_pos;
        int local_slot;
    };
    std::vector<double> values;
    std::vector<SlotInfo> layout;

    std::size_t size() const { return values.size(); }
};

int fabric_param_count(const FabricSpec& spec);

/// Deterministic gate list for the tessellation. Parameter slots are assigned
/// in emission order; composite elements expand to their one-parameter
/// constituents so every slot drives a single-parameter gate.
Circuit expand(const FabricSpec& spec);

/// Slot layout matching expand() (same emission order).
std::vector<ParamVector::SlotInfo> fabric_layout(const FabricSpec& spec);

/// Product state with the n_alpha lowest alpha orbitals and n_beta lowest
/// beta orbitals occupied, interleaved qubit ordering.
StateVector reference_state(int M, int n_alpha, int n_beta);

/// Parameter initialization for the Q and F fabrics. Strategy A sets pair
/// exchange angles to 0, orbital rotation angles to pi/2 and forces
/// pi_gate = OR_pi; strategy B sets them to 0 and pi with pi_gate = identity.
/// The spec's pi_gate is updated in place.
ParamVector initialize(FabricSpec& spec, InitStrategy strategy);

} // namespace qfab
