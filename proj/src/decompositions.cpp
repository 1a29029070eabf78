#include "qfab/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfab {

namespace {

constexpr double kPi = std::numbers::pi;

// Step builders over local wires. For controlled gates the first argument is
// the control. Angles are (scale, offset, param): scale * theta[param] + offset.
GateInstance h(int w) { return {GateKind::H, {w}}; }
GateInstance x(int w) { return {GateKind::X, {w}}; }
GateInstance cnot(int c, int t) { return {GateKind::CNOT, {t, c}}; }
GateInstance cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
GateInstance swap(int a, int b) { return {GateKind::SWAP, {a, b}}; }
GateInstance ry(int w, double scale, double offset = 0.0, int param = 0) {
    return {GateKind::RY, {w}, {AngleExpr{scale, offset, scale == 0.0 ? -1 : param}}};
}
GateInstance cry(int c, int t, double scale, double offset = 0.0, int param = 0) {
    return {GateKind::CRY, {t, c}, {AngleExpr{scale, offset, scale == 0.0 ? -1 : param}}};
}
GateInstance cry_const(int c, int t, double angle) {
    return {GateKind::CRY, {t, c}, {AngleExpr{0.0, angle, -1}}};
}

// The catalogued circuits are drawn with the wire order reversed relative to
// the interleaved-qubit matrix convention used by reference_matrix.
Circuit mirrored(Circuit steps, int arity) {
    for (auto& g : steps)
        for (int& w : g.wires) w = arity - 1 - w;
    return steps;
}

Decomposition g_hadamard() {
    Circuit s = {h(0), h(1), cz(0, 1), ry(0, 0.5), ry(1, -0.5), cz(0, 1), h(0), h(1)};
    return {GateKind::G, "hadamard", mirrored(std::move(s), 2)};
}

Decomposition g_cry() {
    Circuit s = {cnot(1, 0), cry(0, 1, 1.0), cnot(1, 0)};
    return {GateKind::G, "cry", mirrored(std::move(s), 2)};
}

Decomposition g_cnot() {
    Circuit s = {cnot(1, 0), ry(1, 0.5), cnot(0, 1), ry(1, -0.5), cnot(0, 1), cnot(1, 0)};
    return {GateKind::G, "cnot", mirrored(std::move(s), 2)};
}

// QNP_OR uses the cos(phi) convention while its constituent Givens pairs use
// cos(theta/2), so the step angles carry a factor of two.
Decomposition or_cnot() {
    Circuit s = {h(0),        h(1),        cnot(0, 2), cnot(1, 3),
                 ry(0, 1.0),  ry(2, 1.0),  ry(1, 1.0), ry(3, 1.0),
                 cnot(0, 2),  h(0),        cnot(1, 3), h(1)};
    return {GateKind::QNP_OR, "cnot", mirrored(std::move(s), 4)};
}

Decomposition or_cry() {
    Circuit s = {cnot(2, 0), cry(0, 2, 2.0), cnot(2, 0),
                 cnot(3, 1), cry(1, 3, 2.0), cnot(3, 1)};
    return {GateKind::QNP_OR, "cry", mirrored(std::move(s), 4)};
}

Decomposition or_expanded() {
    Circuit s = {cnot(2, 0),  cnot(3, 1),  ry(2, 1.0),  ry(3, 1.0),
                 cnot(0, 2),  cnot(1, 3),  ry(2, -1.0), ry(3, -1.0),
                 cnot(0, 2),  cnot(2, 0),  cnot(1, 3),  cnot(3, 1)};
    return {GateKind::QNP_OR, "expanded", mirrored(std::move(s), 4)};
}

Decomposition px_cry() {
    Circuit s = {cnot(1, 0),      cnot(3, 2),       x(0),
                 cnot(3, 1),      cry(0, 3, 0.25),  cnot(0, 2),
                 cry(2, 3, 0.25), cnot(0, 2),       cry(2, 3, -0.25),
                 cz(1, 3),        cry(0, 3, -0.25), cnot(0, 2),
                 cry(2, 3, -0.25), cnot(0, 2),      x(0),
                 cry(2, 3, 0.25), cz(1, 3),         cnot(3, 1),
                 cnot(3, 2),      cnot(1, 0)};
    return {GateKind::QNP_PX, "cry", mirrored(std::move(s), 4)};
}

Decomposition px_standard() {
    Circuit s = {cnot(1, 0),    cnot(3, 1),   cz(0, 1),      h(3),
                 cnot(3, 2),    ry(3, -0.125), ry(2, 0.125), cz(0, 3),
                 cnot(0, 2),    ry(3, -0.125), ry(2, 0.125), cnot(1, 2),
                 cnot(1, 3),    ry(3, 0.125),  ry(2, -0.125), cnot(0, 2),
                 cz(0, 3),      ry(2, -0.125), ry(3, 0.125),  cnot(3, 2),
                 cnot(1, 3),    h(3),          cnot(3, 1),    cnot(1, 0)};
    return {GateKind::QNP_PX, "standard", mirrored(std::move(s), 4)};
}

Decomposition a1b0_decomp() {
    const double r = 0.125;
    Circuit s = {cnot(2, 0), ry(2, r),  cnot(3, 2), ry(2, r),  cnot(1, 2),
                 ry(2, r),   cz(1, 0),  cnot(3, 2), ry(2, r),  cz(0, 2),
                 ry(2, -r),  cnot(3, 2), ry(2, -r), cnot(1, 2), ry(2, -r),
                 cnot(3, 2), ry(2, -r), cz(0, 2),  cnot(2, 0)};
    return {GateKind::QNP_A1B0, "cnot", mirrored(std::move(s), 4)};
}

Decomposition a0b1_decomp() {
    const double r = 0.125;
    Circuit s = {cnot(3, 1), ry(3, r),  cnot(2, 3), ry(3, r),  cnot(0, 3),
                 ry(3, r),   cz(0, 1),  cnot(2, 3), ry(3, r),  cz(1, 3),
                 ry(3, -r),  cnot(2, 3), ry(3, -r), cnot(0, 3), ry(3, -r),
                 cnot(2, 3), ry(3, -r), cz(1, 3),  cnot(3, 1)};
    return {GateKind::QNP_A0B1, "cnot", mirrored(std::move(s), 4)};
}

Decomposition a2b1_decomp() {
    const double r = 0.125;
    Circuit s = {cnot(3, 1), ry(3, r),  cnot(2, 3), ry(3, -r), cnot(0, 3),
                 ry(3, r),   cnot(2, 3), ry(3, -r), cz(1, 3),  cz(0, 1),
                 ry(3, r),   cnot(2, 3), ry(3, -r), cnot(0, 3), ry(3, r),
                 cnot(2, 3), ry(3, -r), cz(1, 3),  cnot(3, 1)};
    return {GateKind::QNP_A2B1, "cnot", mirrored(std::move(s), 4)};
}

Decomposition a1b2_decomp() {
    const double r = 0.125;
    Circuit s = {cnot(2, 0), ry(2, r),  cnot(3, 2), ry(2, -r), cnot(1, 2),
                 ry(2, r),   cnot(3, 2), ry(2, -r), cz(0, 2),  cz(1, 0),
                 ry(2, r),   cnot(3, 2), ry(2, -r), cnot(1, 2), ry(2, r),
                 cnot(3, 2), ry(2, -r), cz(0, 2),  cnot(2, 0)};
    return {GateKind::QNP_A1B2, "cnot", mirrored(std::move(s), 4)};
}

Decomposition pbl_decomp() {
    const double p8 = kPi / 8;
    Circuit s = {
        cnot(3, 0), cnot(2, 1), x(0), cnot(2, 3),
        cry_const(0, 2, p8), cnot(0, 1), cry_const(1, 2, p8), cnot(0, 1),
        cry_const(1, 2, -p8), cz(3, 2), cry_const(0, 2, -p8), cnot(0, 1),
        cry_const(1, 2, -p8), cnot(0, 1), cry_const(1, 2, p8),
        cz(3, 2), cnot(2, 3), cnot(2, 0), x(0), cnot(1, 2),
        cry(0, 1, 0.25), cnot(0, 3), cry(3, 1, 0.25), cnot(0, 3),
        cry(3, 1, -0.25), cz(2, 1), cry(0, 1, -0.25), cnot(0, 3),
        cry(3, 1, -0.25), cnot(0, 3), cry(3, 1, 0.25),
        x(0), cz(2, 1), cnot(1, 2), cnot(2, 0), cnot(2, 3),
        cry_const(0, 2, -p8), cnot(0, 1), cry_const(1, 2, -p8), cnot(0, 1),
        cry_const(1, 2, p8), cz(3, 2), cry_const(0, 2, p8), cnot(0, 1),
        cry_const(1, 2, p8), cnot(0, 1), cry_const(1, 2, -p8),
        x(0), cz(3, 2), cnot(2, 3), cnot(2, 1), cnot(3, 0)};
    return {GateKind::QNP_PBL, "cry", mirrored(std::move(s), 4)};
}

Decomposition pbu_decomp() {
    const double p8 = kPi / 8;
    Circuit s = {
        cnot(3, 0), cnot(2, 1), x(0), cnot(2, 3),
        cry_const(0, 2, p8), cnot(0, 1), cry_const(1, 2, p8), cnot(0, 1),
        cry_const(1, 2, -p8), cz(3, 2), cry_const(0, 2, -p8), cnot(0, 1),
        cry_const(1, 2, -p8), cnot(0, 1), cry_const(1, 2, p8),
        cz(3, 2), cnot(2, 3), cnot(3, 0), cnot(3, 1),
        cry(0, 3, 0.25), cnot(0, 2), cry(2, 3, -0.25), cnot(0, 2),
        cry(2, 3, 0.25), cz(1, 3), cry(0, 3, 0.25), cnot(0, 2),
        cry(2, 3, -0.25), cnot(0, 2), cry(2, 3, 0.25),
        cz(1, 3), cnot(3, 1), cnot(3, 0), cnot(2, 3),
        cry_const(0, 2, -p8), cnot(0, 1), cry_const(1, 2, -p8), cnot(0, 1),
        cry_const(1, 2, p8), cz(3, 2), cry_const(0, 2, p8), cnot(0, 1),
        cry_const(1, 2, p8), cnot(0, 1), cry_const(1, 2, -p8),
        cz(3, 2), cnot(2, 3), cnot(2, 1), cnot(3, 0), x(0)};
    return {GateKind::QNP_PBU, "cry", mirrored(std::move(s), 4)};
}

Decomposition ofswap_decomp() {
    Circuit s = {swap(0, 2), cz(0, 2), swap(1, 3), cz(1, 3)};
    return {GateKind::OFSWAP, "swap_cz", std::move(s)};
}

Decomposition fswap_decomp() {
    Circuit s = {swap(0, 1), cz(0, 1)};
    return {GateKind::FSWAP, "swap_cz", std::move(s)};
}

} // namespace

std::vector<Decomposition> all_decompositions(GateKind kind) {
    switch (kind) {
        case GateKind::G: return {g_hadamard(), g_cry(), g_cnot()};
        case GateKind::QNP_OR: return {or_cnot(), or_cry(), or_expanded()};
        case GateKind::QNP_PX: return {px_cry(), px_standard()};
        case GateKind::QNP_A1B0: return {a1b0_decomp()};
        case GateKind::QNP_A0B1: return {a0b1_decomp()};
        case GateKind::QNP_A2B1: return {a2b1_decomp()};
        case GateKind::QNP_A1B2: return {a1b2_decomp()};
        case GateKind::QNP_PBU: return {pbu_decomp()};
        case GateKind::QNP_PBL: return {pbl_decomp()};
        case GateKind::OFSWAP: return {ofswap_decomp()};
        case GateKind::FSWAP: return {fswap_decomp()};
        default: return {};
    }
}

Decomposition decomposition(GateKind kind) {
    auto ds = all_decompositions(kind);
    if (ds.empty())
        throw std::invalid_argument(std::string("no decomposition catalogued for ") +
                                    kind_name(kind));
    return ds.front();
}

} // namespace qfab
