#include "qfab/gates.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace qfab {

namespace {

struct KindInfo {
    const char* name;
    int arity;
    int n_params;
};

const std::map<GateKind, KindInfo>& kind_table() {
    static const std::map<GateKind, KindInfo> table = {
        {GateKind::RY, {"RY", 1, 1}},
        {GateKind::H, {"H", 1, 0}},
        {GateKind::X, {"X", 1, 0}},
        {GateKind::CNOT, {"CNOT", 2, 0}},
        {GateKind::CZ, {"CZ", 2, 0}},
        {GateKind::CRY, {"CRY", 2, 1}},
        {GateKind::SWAP, {"SWAP", 2, 0}},
        {GateKind::FSWAP, {"FSWAP", 2, 0}},
        {GateKind::G, {"G", 2, 1}},
        {GateKind::QNP_OR, {"QNP_OR", 4, 1}},
        {GateKind::QNP_PX, {"QNP_PX", 4, 1}},
        {GateKind::QNP_1p, {"QNP_1p", 4, 1}},
        {GateKind::QNP_1h, {"QNP_1h", 4, 1}},
        {GateKind::QNP_A1B0, {"QNP_A1B0", 4, 1}},
        {GateKind::QNP_A0B1, {"QNP_A0B1", 4, 1}},
        {GateKind::QNP_A2B1, {"QNP_A2B1", 4, 1}},
        {GateKind::QNP_A1B2, {"QNP_A1B2", 4, 1}},
        {GateKind::QNP_PBU, {"QNP_PBU", 4, 1}},
        {GateKind::QNP_PBL, {"QNP_PBL", 4, 1}},
        {GateKind::OFSWAP, {"OFSWAP", 4, 0}},
        {GateKind::F, {"F", 4, 5}},
        {GateKind::Q, {"Q", 4, 2}},
        {GateKind::SO4, {"SO4", 2, 6}},
        {GateKind::HammingGivens, {"HammingGivens", 2, 1}},
        {GateKind::Hamming8, {"Hamming8", 3, 6}},
    };
    return table;
}

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

void set_givens(GateMatrix& m, int i, int j, double c, double s) {
    m.at(i, i) = c;
    m.at(i, j) = s;
    m.at(j, i) = -s;
    m.at(j, j) = c;
}

GateMatrix ry_matrix(double t) {
    GateMatrix m(1);
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    m.at(0, 0) = c;
    m.at(0, 1) = -s;
    m.at(1, 0) = s;
    m.at(1, 1) = c;
    return m;
}

GateMatrix givens2q(double c, double s) {
    GateMatrix m = GateMatrix::identity(2);
    set_givens(m, 1, 2, c, s);
    return m;
}

GateMatrix qnp_or_matrix(double phi) {
    // Spin-adapted two-orbital rotation; the same Givens rotation acts in the
    // alpha and beta one-particle blocks and as their product in the singlet
    // block. cos(phi) convention.
    const double c = std::cos(phi), s = std::sin(phi);
    GateMatrix m = GateMatrix::identity(4);
    set_givens(m, 1, 4, c, s);
    set_givens(m, 2, 8, c, s);
    set_givens(m, 7, 13, c, s);
    set_givens(m, 11, 14, c, s);
    const int idx[4] = {3, 6, 9, 12};
    const double g[4][4] = {
        {c * c, c * s, c * s, s * s},
        {-c * s, c * c, -s * s, c * s},
        {-c * s, -s * s, c * c, c * s},
        {s * s, -c * s, -c * s, c * c},
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m.at(idx[a], idx[b]) = g[a][b];
    return m;
}

GateMatrix block_givens_16(std::initializer_list<std::pair<int, int>> blocks, double theta) {
    GateMatrix m = GateMatrix::identity(4);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for (auto [i, j] : blocks) set_givens(m, i, j, c, s);
    return m;
}

GateMatrix pair_break_matrix(int closed_shell, double theta) {
    // Givens rotation between one closed-shell determinant and the open-shell
    // singlet (|6> + |9>)/sqrt(2); identity on the rest, including the triplet.
    GateMatrix m = GateMatrix::identity(4);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const int u = closed_shell;
    m.at(u, u) = c;
    m.at(u, 6) = s * kInvSqrt2;
    m.at(u, 9) = s * kInvSqrt2;
    m.at(6, u) = -s * kInvSqrt2;
    m.at(9, u) = -s * kInvSqrt2;
    m.at(6, 6) = 0.5 * (c + 1.0);
    m.at(6, 9) = 0.5 * (c - 1.0);
    m.at(9, 6) = 0.5 * (c - 1.0);
    m.at(9, 9) = 0.5 * (c + 1.0);
    return m;
}

GateMatrix ofswap_matrix() {
    // Orbital-wise fermionic swap: exchange both spin orbitals of the two
    // spatial orbitals with a -1 phase per doubly-swapped occupied pair.
    GateMatrix m(4);
    for (int b = 0; b < 16; ++b) {
        const int b0 = b & 1, b1 = (b >> 1) & 1, b2 = (b >> 2) & 1, b3 = (b >> 3) & 1;
        const int t = b0 << 2 | b1 << 3 | b2 | b3 << 1;
        double sign = 1.0;
        if (b0 && b2) sign = -sign;
        if (b1 && b3) sign = -sign;
        m.at(t, b) = sign;
    }
    return m;
}

void so3_exp(const double x[3], double v[3][3]) {
    const double a[3][3] = {{0, x[0], x[1]}, {-x[0], 0, x[2]}, {-x[1], -x[2], 0}};
    const double th = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    double k1 = 1.0, k2 = 0.5;
    if (th > 1e-8) {
        k1 = std::sin(th) / th;
        k2 = (1.0 - std::cos(th)) / (th * th);
    } else {
        // series fallback near zero
        k1 = 1.0 - th * th / 6.0;
        k2 = 0.5 - th * th / 24.0;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double a2 = 0;
            for (int k = 0; k < 3; ++k) a2 += a[i][k] * a[k][j];
            v[i][j] = (i == j ? 1.0 : 0.0) + k1 * a[i][j] + k2 * a2;
        }
}

GateMatrix f_matrix(std::span<const double> p) {
    // One-particle and one-hole Givens blocks (full-angle convention) plus an
    // SO(3) rotation of the three singlet configuration state functions,
    // expressed in the determinant basis through the fixed CSF transform.
    const double c1 = std::cos(p[0]), s1 = std::sin(p[0]);
    const double c2 = std::cos(p[1]), s2 = std::sin(p[1]);
    GateMatrix m = GateMatrix::identity(4);
    set_givens(m, 1, 4, c1, s1);
    set_givens(m, 2, 8, c1, s1);
    set_givens(m, 7, 13, c2, s2);
    set_givens(m, 11, 14, c2, s2);

    const double x[3] = {p[2], p[3], p[4]};
    double v[3][3];
    so3_exp(x, v);
    // rows of T: |#3>, |#12>, open-shell singlet, open-shell triplet
    const double T[4][4] = {{1, 0, 0, 0},
                            {0, 0, 0, 1},
                            {0, kInvSqrt2, kInvSqrt2, 0},
                            {0, kInvSqrt2, -kInvSqrt2, 0}};
    double blk[4][4] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) blk[i][j] = v[i][j];
    blk[3][3] = 1.0;
    double u[4][4] = {};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) acc += T[a][i] * blk[a][b] * T[b][j];
            u[i][j] = acc;
        }
    const int idx[4] = {3, 6, 9, 12};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m.at(idx[a], idx[b]) = u[a][b];
    return m;
}

GateMatrix hamming8_matrix(std::span<const double> p) {
    GateMatrix m = GateMatrix::identity(3);
    const int blk1[3] = {1, 2, 4};
    const int blk2[3] = {3, 5, 6};
    double v[3][3];
    const double x1[3] = {p[0], p[1], p[2]};
    so3_exp(x1, v);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m.at(blk1[a], blk1[b]) = v[a][b];
    const double x2[3] = {p[3], p[4], p[5]};
    so3_exp(x2, v);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m.at(blk2[a], blk2[b]) = v[a][b];
    return m;
}

GateMatrix embed_local(const GateMatrix& g, std::span<const int> wires, int n) {
    GateMatrix out(n);
    StateVector col(n);
    for (std::uint64_t j = 0; j < (std::uint64_t(1) << n); ++j) {
        std::fill(col.amp.begin(), col.amp.end(), 0.0);
        col.amp[j] = 1.0;
        kernels::apply_dense_serial(col.amp, n, g, wires);
        for (std::uint64_t i = 0; i < col.dim(); ++i) out.at(int(i), int(j)) = col.amp[i];
    }
    return out;
}

GateMatrix so4_matrix(std::span<const double> p) {
    // Defined by its circuit: three RY pairs separated by two CZ gates.
    GateMatrix cz(2);
    cz.at(0, 0) = cz.at(1, 1) = cz.at(2, 2) = 1.0;
    cz.at(3, 3) = -1.0;
    auto layer = [&](double a, double b) {
        const int w0[1] = {0}, w1[1] = {1};
        GateMatrix m = embed_local(ry_matrix(a), w0, 2);
        return embed_local(ry_matrix(b), w1, 2) * m;
    };
    GateMatrix u = layer(p[0], p[1]);
    u = cz * u;
    u = layer(p[2], p[3]) * u;
    u = cz * u;
    u = layer(p[4], p[5]) * u;
    return u;
}

} // namespace

int arity(GateKind kind) { return kind_table().at(kind).arity; }
int n_params(GateKind kind) { return kind_table().at(kind).n_params; }
const char* kind_name(GateKind kind) { return kind_table().at(kind).name; }

GateKind kind_from_name(const std::string& name) {
    for (const auto& [k, info] : kind_table())
        if (name == info.name) return k;
    throw std::invalid_argument("unknown gate kind: " + name);
}

std::vector<GateKind> all_gate_kinds() {
    std::vector<GateKind> out;
    for (const auto& [k, info] : kind_table()) out.push_back(k);
    return out;
}

GateMatrix reference_matrix(GateKind kind, std::span<const double> params) {
    if (int(params.size()) != n_params(kind))
        throw std::invalid_argument(std::string("reference_matrix: ") + kind_name(kind) +
                                    " expects " + std::to_string(n_params(kind)) + " parameters");
    switch (kind) {
        case GateKind::RY: return ry_matrix(params[0]);
        case GateKind::H: {
            GateMatrix m(1);
            m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = kInvSqrt2;
            m.at(1, 1) = -kInvSqrt2;
            return m;
        }
        case GateKind::X: {
            GateMatrix m(1);
            m.at(0, 1) = m.at(1, 0) = 1.0;
            return m;
        }
        case GateKind::CNOT: {
            // control = local bit 1, target = local bit 0
            GateMatrix m(2);
            m.at(0, 0) = m.at(1, 1) = 1.0;
            m.at(2, 3) = m.at(3, 2) = 1.0;
            return m;
        }
        case GateKind::CZ: {
            GateMatrix m = GateMatrix::identity(2);
            m.at(3, 3) = -1.0;
            return m;
        }
        case GateKind::CRY: {
            GateMatrix m = GateMatrix::identity(2);
            const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
            m.at(2, 2) = c;
            m.at(2, 3) = -s;
            m.at(3, 2) = s;
            m.at(3, 3) = c;
            return m;
        }
        case GateKind::SWAP: {
            GateMatrix m(2);
            m.at(0, 0) = m.at(3, 3) = 1.0;
            m.at(1, 2) = m.at(2, 1) = 1.0;
            return m;
        }
        case GateKind::FSWAP: {
            GateMatrix m(2);
            m.at(0, 0) = 1.0;
            m.at(1, 2) = m.at(2, 1) = 1.0;
            m.at(3, 3) = -1.0;
            return m;
        }
        case GateKind::G:
        case GateKind::HammingGivens:
            return givens2q(std::cos(params[0] / 2), std::sin(params[0] / 2));
        case GateKind::QNP_OR: return qnp_or_matrix(params[0]);
        case GateKind::QNP_PX: return block_givens_16({{3, 12}}, params[0]);
        case GateKind::QNP_1p: return block_givens_16({{1, 4}, {2, 8}}, params[0]);
        case GateKind::QNP_1h: return block_givens_16({{7, 13}, {11, 14}}, params[0]);
        case GateKind::QNP_A1B0: return block_givens_16({{2, 8}}, params[0]);
        case GateKind::QNP_A0B1: return block_givens_16({{1, 4}}, params[0]);
        case GateKind::QNP_A2B1: return block_givens_16({{11, 14}}, params[0]);
        case GateKind::QNP_A1B2: return block_givens_16({{7, 13}}, params[0]);
        case GateKind::QNP_PBU: return pair_break_matrix(3, params[0]);
        case GateKind::QNP_PBL: return pair_break_matrix(12, params[0]);
        case GateKind::OFSWAP: return ofswap_matrix();
        case GateKind::F: return f_matrix(params);
        case GateKind::Q: {
            const double px[1] = {params[0]}, orp[1] = {params[1]};
            return qnp_or_matrix(orp[0]) * block_givens_16({{3, 12}}, px[0]);
        }
        case GateKind::SO4: return so4_matrix(params);
        case GateKind::Hamming8: return hamming8_matrix(params);
    }
    throw std::logic_error("reference_matrix: unhandled kind");
}

GateMatrix generator(GateKind kind) {
    if (n_params(kind) != 1)
        throw std::invalid_argument(std::string("generator: ") + kind_name(kind) +
                                    " is not a one-parameter gate");
    auto j_pairs = [&](std::initializer_list<std::pair<int, int>> blocks, double w) {
        GateMatrix a(arity(kind));
        for (auto [i, j] : blocks) {
            a.at(i, j) = w;
            a.at(j, i) = -w;
        }
        return a;
    };
    switch (kind) {
        case GateKind::RY: return j_pairs({{0, 1}}, -0.5);
        case GateKind::CRY: return j_pairs({{2, 3}}, -0.5);
        case GateKind::G:
        case GateKind::HammingGivens: return j_pairs({{1, 2}}, 0.5);
        case GateKind::QNP_PX: return j_pairs({{3, 12}}, 0.5);
        case GateKind::QNP_1p: return j_pairs({{1, 4}, {2, 8}}, 0.5);
        case GateKind::QNP_1h: return j_pairs({{7, 13}, {11, 14}}, 0.5);
        case GateKind::QNP_A1B0: return j_pairs({{2, 8}}, 0.5);
        case GateKind::QNP_A0B1: return j_pairs({{1, 4}}, 0.5);
        case GateKind::QNP_A2B1: return j_pairs({{11, 14}}, 0.5);
        case GateKind::QNP_A1B2: return j_pairs({{7, 13}}, 0.5);
        case GateKind::QNP_PBU:
            return j_pairs({{3, 6}, {3, 9}}, 0.5 * kInvSqrt2);
        case GateKind::QNP_PBL:
            return j_pairs({{12, 6}, {12, 9}}, 0.5 * kInvSqrt2);
        case GateKind::QNP_OR: {
            GateMatrix a = j_pairs({{1, 4}, {2, 8}, {7, 13}, {11, 14}}, 1.0);
            const int idx[4] = {3, 6, 9, 12};
            const double g[4][4] = {
                {0, 1, 1, 0}, {-1, 0, 0, 1}, {-1, 0, 0, 1}, {0, -1, -1, 0}};
            for (int p = 0; p < 4; ++p)
                for (int q = 0; q < 4; ++q) a.at(idx[p], idx[q]) = g[p][q];
            return a;
        }
        default: break;
    }
    throw std::logic_error("generator: unhandled kind");
}

GateMatrix instance_matrix(const GateInstance& g, std::span<const double> params) {
    std::vector<double> vals(g.angles.size());
    for (std::size_t i = 0; i < g.angles.size(); ++i) vals[i] = g.angles[i].eval(params);
    return reference_matrix(g.kind, vals);
}

void apply_instance(StateVector& state, const GateInstance& g, std::span<const double> params) {
    apply_gate_wires(state, instance_matrix(g, params), g.wires);
}

void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const double> params) {
    for (const auto& g : circuit) apply_instance(state, g, params);
}

void apply_circuit_inverse(StateVector& state, const Circuit& circuit,
                           std::span<const double> params) {
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it)
        apply_gate_wires(state, instance_matrix(*it, params).transpose(), it->wires);
}

GateMatrix circuit_matrix(const Circuit& circuit, int n_qubits, std::span<const double> params) {
    if (n_qubits > 12) throw std::invalid_argument("circuit_matrix: too many qubits");
    GateMatrix out(n_qubits);
    for (std::uint64_t col = 0; col < (std::uint64_t(1) << n_qubits); ++col) {
        StateVector v = StateVector::basis_state(n_qubits, col);
        apply_circuit(v, circuit, params);
        for (std::uint64_t row = 0; row < v.dim(); ++row) out.at(int(row), int(col)) = v.amp[row];
    }
    return out;
}

int Decomposition::two_qubit_count() const {
    return circuit_stats(steps, false).two_qubit_count;
}
int Decomposition::one_qubit_count() const {
    return circuit_stats(steps, false).one_qubit_count;
}
int Decomposition::depth() const { return circuit_stats(steps, false).depth; }

GateMatrix Decomposition::to_matrix(std::span<const double> params) const {
    if (int(params.size()) != n_params(target))
        throw std::invalid_argument("Decomposition::to_matrix: parameter count mismatch");
    return circuit_matrix(steps, arity(target), params);
}

CircuitStats circuit_stats(const Circuit& circuit, bool decompose) {
    const Circuit* c = &circuit;
    Circuit expanded;
    if (decompose) {
        expanded = decompose_circuit(circuit);
        c = &expanded;
    }
    CircuitStats st;
    std::map<int, int> busy_until;
    for (const auto& g : *c) {
        int layer = 0;
        for (int w : g.wires) layer = std::max(layer, busy_until[w]);
        ++layer;
        for (int w : g.wires) busy_until[w] = layer;
        st.depth = std::max(st.depth, layer);
        if (g.wires.size() == 2) ++st.two_qubit_count;
        if (g.wires.size() == 1) ++st.one_qubit_count;
    }
    return st;
}

Circuit decompose_circuit(const Circuit& circuit) {
    Circuit out;
    for (const auto& g : circuit) {
        std::vector<Decomposition> ds = all_decompositions(g.kind);
        if (ds.empty()) {
            out.push_back(g);
            continue;
        }
        Circuit inner;
        for (const auto& step : ds.front().steps) {
            std::vector<int> wires;
            wires.reserve(step.wires.size());
            for (int w : step.wires) wires.push_back(g.wires[std::size_t(w)]);
            std::vector<AngleExpr> angles;
            for (const AngleExpr& a : step.angles) {
                if (a.is_constant()) {
                    angles.push_back(a);
                } else {
                    const AngleExpr& outer = g.angles[std::size_t(a.param)];
                    AngleExpr composed;
                    composed.scale = a.scale * outer.scale;
                    composed.offset = a.scale * outer.offset + a.offset;
                    composed.param = outer.param;
                    if (outer.is_constant()) {
                        composed.offset = a.scale * outer.offset + a.offset;
                        composed.scale = 0.0;
                        composed.param = -1;
                    }
                    angles.push_back(composed);
                }
            }
            inner.emplace_back(step.kind, std::move(wires), std::move(angles));
        }
        Circuit rec = decompose_circuit(inner);
        for (auto& s : rec) out.push_back(std::move(s));
    }
    return out;
}

} // namespace qfab
