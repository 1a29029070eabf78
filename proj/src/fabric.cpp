#include "qfab/fabric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfab {

namespace {

constexpr double kPi = std::numbers::pi;

bool fermionic(FabricKind k) {
    return k == FabricKind::Q || k == FabricKind::F || k == FabricKind::OR_only ||
           k == FabricKind::PX_only;
}

/// Start qubits of the elements in one layer.
std::vector<int> layer_bases(const FabricSpec& spec, int layer) {
    std::vector<int> bases;
    const int n = spec.n_qubits();
    if (fermionic(spec.kind)) {
        // 4-qubit elements on spatial-orbital pairs, alternating even/odd.
        const int start = (layer % 2 == 0) ? 0 : 2;
        for (int q = start; q + 3 < n; q += 4) bases.push_back(q);
    } else if (spec.kind == FabricKind::SO4 || spec.kind == FabricKind::HammingGivens) {
        const int start = (layer % 2 == 0) ? 0 : 1;
        for (int q = start; q + 1 < n; q += 2) bases.push_back(q);
    } else { // Hamming8: cascading qubit triples
        const int start = layer % 3;
        for (int q = start; q + 2 < n; q += 3) bases.push_back(q);
    }
    return bases;
}

int params_per_element(FabricKind k) {
    switch (k) {
        case FabricKind::Q: return 2;
        case FabricKind::F: return 5;
        case FabricKind::OR_only:
        case FabricKind::PX_only:
        case FabricKind::HammingGivens: return 1;
        case FabricKind::SO4:
        case FabricKind::Hamming8: return 6;
    }
    return 0;
}

AngleExpr slot(int s) { return AngleExpr{1.0, 0.0, s}; }

void emit_pi(Circuit& circuit, PiGate pi, int base) {
    switch (pi) {
        case PiGate::identity: break;
        case PiGate::OR_pi:
            circuit.emplace_back(GateKind::QNP_OR,
                                 std::vector<int>{base, base + 1, base + 2, base + 3},
                                 std::vector<AngleExpr>{AngleExpr{0.0, kPi, -1}});
            break;
        case PiGate::OFSWAP:
            circuit.emplace_back(GateKind::OFSWAP,
                                 std::vector<int>{base, base + 1, base + 2, base + 3});
            break;
    }
}

void emit_element(Circuit& circuit, const FabricSpec& spec, int base, int slot0) {
    std::vector<int> w4 = {base, base + 1, base + 2, base + 3};
    switch (spec.kind) {
        case FabricKind::Q: {
            for (QElement e : spec.gate_order) {
                switch (e) {
                    case QElement::Pi: emit_pi(circuit, spec.pi_gate, base); break;
                    case QElement::PX:
                        circuit.emplace_back(GateKind::QNP_PX, w4,
                                             std::vector<AngleExpr>{slot(slot0)});
                        break;
                    case QElement::OR:
                        circuit.emplace_back(GateKind::QNP_OR, w4,
                                             std::vector<AngleExpr>{slot(slot0 + 1)});
                        break;
                }
            }
            break;
        }
        case FabricKind::F: {
            emit_pi(circuit, spec.pi_gate, base);
            // Factored realization: five one-parameter QNP gates span the same
            // element manifold as the monolithic 5-parameter gate.
            const GateKind seq[5] = {GateKind::QNP_1p, GateKind::QNP_1h, GateKind::QNP_PX,
                                     GateKind::QNP_PBU, GateKind::QNP_PBL};
            for (int i = 0; i < 5; ++i)
                circuit.emplace_back(seq[i], w4, std::vector<AngleExpr>{slot(slot0 + i)});
            break;
        }
        case FabricKind::OR_only:
            circuit.emplace_back(GateKind::QNP_OR, w4, std::vector<AngleExpr>{slot(slot0)});
            break;
        case FabricKind::PX_only:
            circuit.emplace_back(GateKind::QNP_PX, w4, std::vector<AngleExpr>{slot(slot0)});
            break;
        case FabricKind::SO4: {
            // Circuit-defined element; emitted in elementary form so every
            // slot drives a single RY.
            std::vector<int> w2 = {base, base + 1};
            auto ry_slot = [&](int w, int s) {
                circuit.emplace_back(GateKind::RY, std::vector<int>{w},
                                     std::vector<AngleExpr>{slot(s)});
            };
            ry_slot(base, slot0);
            ry_slot(base + 1, slot0 + 1);
            circuit.emplace_back(GateKind::CZ, w2);
            ry_slot(base, slot0 + 2);
            ry_slot(base + 1, slot0 + 3);
            circuit.emplace_back(GateKind::CZ, w2);
            ry_slot(base, slot0 + 4);
            ry_slot(base + 1, slot0 + 5);
            break;
        }
        case FabricKind::HammingGivens:
            circuit.emplace_back(GateKind::HammingGivens, std::vector<int>{base, base + 1},
                                 std::vector<AngleExpr>{slot(slot0)});
            break;
        case FabricKind::Hamming8: {
            std::vector<AngleExpr> angles;
            for (int i = 0; i < 6; ++i) angles.push_back(slot(slot0 + i));
            circuit.emplace_back(GateKind::Hamming8,
                                 std::vector<int>{base, base + 1, base + 2}, std::move(angles));
            break;
        }
    }
}

} // namespace

int FabricSpec::n_qubits() const { return fermionic(kind) ? 2 * M : M; }

FabricKind fabric_kind_from_name(const std::string& name) {
    if (name == "Q") return FabricKind::Q;
    if (name == "F") return FabricKind::F;
    if (name == "OR_only") return FabricKind::OR_only;
    if (name == "PX_only") return FabricKind::PX_only;
    if (name == "SO4") return FabricKind::SO4;
    if (name == "HammingGivens") return FabricKind::HammingGivens;
    if (name == "Hamming8") return FabricKind::Hamming8;
    throw std::invalid_argument("unknown fabric kind: " + name);
}

const char* fabric_kind_name(FabricKind k) {
    switch (k) {
        case FabricKind::Q: return "Q";
        case FabricKind::F: return "F";
        case FabricKind::OR_only: return "OR_only";
        case FabricKind::PX_only: return "PX_only";
        case FabricKind::SO4: return "SO4";
        case FabricKind::HammingGivens: return "HammingGivens";
        case FabricKind::Hamming8: return "Hamming8";
    }
    return "?";
}

const char* pi_gate_name(PiGate p) {
    switch (p) {
        case PiGate::identity: return "identity";
        case PiGate::OR_pi: return "OR_pi";
        case PiGate::OFSWAP: return "OFSWAP";
    }
    return "?";
}

PiGate pi_gate_from_name(const std::string& name) {
    if (name == "identity") return PiGate::identity;
    if (name == "OR_pi") return PiGate::OR_pi;
    if (name == "OFSWAP") return PiGate::OFSWAP;
    throw std::invalid_argument("unknown pi gate: " + name);
}

GateOrder gate_order_from_string(const std::string& s) {
    if (s.size() != 3) throw std::invalid_argument("gate order must be a permutation of 'ipo'");
    GateOrder o{};
    bool seen[3] = {};
    for (int i = 0; i < 3; ++i) {
        switch (s[std::size_t(i)]) {
            case 'i': o[std::size_t(i)] = QElement::Pi; seen[0] = true; break;
            case 'p': o[std::size_t(i)] = QElement::PX; seen[1] = true; break;
            case 'o': o[std::size_t(i)] = QElement::OR; seen[2] = true; break;
            default: throw std::invalid_argument("gate order must be a permutation of 'ipo'");
        }
    }
    if (!(seen[0] && seen[1] && seen[2]))
        throw std::invalid_argument("gate order must be a permutation of 'ipo'");
    return o;
}

std::string gate_order_to_string(const GateOrder& o) {
    std::string s;
    for (QElement e : o)
        s += (e == QElement::Pi ? 'i' : (e == QElement::PX ? 'p' : 'o'));
    return s;
}

int fabric_param_count(const FabricSpec& spec) {
    int gates = 0;
    for (int l = 0; l < spec.n_layers; ++l) gates += int(layer_bases(spec, l).size());
    return gates * params_per_element(spec.kind);
}

Circuit expand(const FabricSpec& spec) {
    if (fermionic(spec.kind) && spec.M < 2)
        throw std::invalid_argument("expand: fermionic fabrics need M >= 2");
    if (!fermionic(spec.kind) && spec.M < arity(spec.kind == FabricKind::Hamming8
                                                    ? GateKind::Hamming8
                                                    : GateKind::HammingGivens))
        throw std::invalid_argument("expand: too few qubits for fabric element");
    if (spec.n_layers < 1) throw std::invalid_argument("expand: n_layers >= 1 required");

    Circuit circuit;
    int next_slot = 0;
    for (int l = 0; l < spec.n_layers; ++l) {
        for (int base : layer_bases(spec, l)) {
            emit_element(circuit, spec, base, next_slot);
            next_slot += params_per_element(spec.kind);
        }
    }
    return circuit;
}

std::vector<ParamVector::SlotInfo> fabric_layout(const FabricSpec& spec) {
    std::vector<ParamVector::SlotInfo> layout;
    const int per = params_per_element(spec.kind);
    for (int l = 0; l < spec.n_layers; ++l) {
        const auto bases = layer_bases(spec, l);
        for (int g = 0; g < int(bases.size()); ++g)
            for (int s = 0; s < per; ++s) layout.push_back({l, g, s});
    }
    return layout;
}

StateVector reference_state(int M, int n_alpha, int n_beta) {
    if (n_alpha < 0 || n_alpha > M || n_beta < 0 || n_beta > M)
        throw std::invalid_argument("reference_state: occupation out of range");
    std::uint64_t index = 0;
    for (int p = 0; p < n_alpha; ++p) index |= 1ULL << (2 * p);
    for (int p = 0; p < n_beta; ++p) index |= 1ULL << (2 * p + 1);
    return StateVector::basis_state(2 * M, index);
}

ParamVector initialize(FabricSpec& spec, InitStrategy strategy) {
    if (spec.kind != FabricKind::Q && spec.kind != FabricKind::F)
        throw std::invalid_argument("initialize: strategy defined for Q and F fabrics only");
    spec.pi_gate = (strategy == InitStrategy::A) ? PiGate::OR_pi : PiGate::identity;
    ParamVector pv;
    pv.layout = fabric_layout(spec);
    pv.values.assign(pv.layout.size(), 0.0);
    if (spec.kind == FabricKind::Q) {
        const double phi = (strategy == InitStrategy::A) ? kPi / 2 : kPi;
        for (std::size_t i = 0; i < pv.layout.size(); ++i)
            if (pv.layout[i].local_slot == 1) pv.values[i] = phi;
    }
    return pv;
}

} // namespace qfab
