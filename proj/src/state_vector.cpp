#include "qfab/state_vector.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace qfab {

GateMatrix GateMatrix::identity(int k) {
    GateMatrix g(k);
    for (int i = 0; i < g.dim(); ++i) g.at(i, i) = 1.0;
    return g;
}

GateMatrix GateMatrix::transpose() const {
    GateMatrix t(arity);
    for (int r = 0; r < dim(); ++r)
        for (int c = 0; c < dim(); ++c) t.at(c, r) = at(r, c);
    return t;
}

bool GateMatrix::is_orthogonal(double tol) const {
    const int d = dim();
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            double dot = 0.0;
            for (int k = 0; k < d; ++k) dot += at(k, r) * at(k, c);
            if (std::abs(dot - (r == c ? 1.0 : 0.0)) > tol) return false;
        }
    }
    return true;
}

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
    if (a.arity != b.arity) throw std::invalid_argument("GateMatrix product: arity mismatch");
    const int d = a.dim();
    GateMatrix out(a.arity);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) {
            const double ark = a.at(r, k);
            if (ark == 0.0) continue;
            for (int c = 0; c < d; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    return out;
}

StateVector StateVector::basis_state(int n, std::uint64_t index) {
    StateVector s(n);
    if (index >= s.dim()) throw std::out_of_range("basis_state: index out of range");
    s.amp[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double s = 0.0;
    for (double a : amp) s += a * a;
    return std::sqrt(s);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0.0) throw std::runtime_error("normalize: zero vector");
    for (double& a : amp) a /= n;
}

double overlap(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("overlap: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a.amp[i] * b.amp[i];
    return s;
}

namespace {
std::atomic<bool> g_parallel{true};
} // namespace

void set_parallel_kernels(bool enabled) { g_parallel.store(enabled); }
bool parallel_kernels_enabled() { return g_parallel.load(); }

namespace kernels {

namespace {

struct WirePlan {
    int k = 0;
    std::uint64_t offsets[16];   // offsets[l] = index bits of local state l
    std::uint64_t lowmask[16];   // masks for expanding a coset counter
    std::uint64_t shifted[16];
    int n_groups = 0;

    WirePlan(int n_qubits, std::span<const int> wires) {
        k = int(wires.size());
        if (k < 1 || k > 6) throw std::invalid_argument("apply_dense: supported gate arity is 1..6");
        std::uint64_t wmask = 0;
        for (int j = 0; j < k; ++j) {
            const int w = wires[std::size_t(j)];
            if (w < 0 || w >= n_qubits) throw std::out_of_range("apply_dense: qubit index out of range");
            if (wmask & (1ULL << w)) throw std::invalid_argument("apply_dense: duplicate qubit index");
            wmask |= 1ULL << w;
        }
        for (int l = 0; l < (1 << k); ++l) {
            std::uint64_t off = 0;
            for (int j = 0; j < k; ++j)
                if (l & (1 << j)) off |= 1ULL << wires[std::size_t(j)];
            offsets[l] = off;
        }
        // Precompute shift groups so a dense counter expands to a base index
        // with zeros on the gate wires.
        int sorted[6];
        for (int j = 0; j < k; ++j) sorted[j] = wires[std::size_t(j)];
        std::sort(sorted, sorted + k);
        n_groups = 0;
        for (int j = 0; j <= k; ++j) {
            const int lo = (j == 0) ? 0 : sorted[j - 1] + 1 - j;   // counter bits below this gap
            const int hi = (j == k) ? n_qubits - k : sorted[j] - j;
            if (hi > lo) {
                lowmask[n_groups] = ((1ULL << (hi - lo)) - 1) << lo;
                shifted[n_groups] = std::uint64_t(j);
                ++n_groups;
            }
        }
    }

    std::uint64_t expand(std::uint64_t counter) const {
        std::uint64_t out = 0;
        for (int g = 0; g < n_groups; ++g) out |= (counter & lowmask[g]) << shifted[g];
        return out;
    }
};

inline void apply_block(std::vector<double>& amp, const WirePlan& plan, const double* m,
                        std::uint64_t base) {
    const int d = 1 << plan.k;
    double local[64];
    for (int l = 0; l < d; ++l) local[l] = amp[base | plan.offsets[l]];
    for (int r = 0; r < d; ++r) {
        const double* row = m + std::size_t(r) * d;
        double acc = 0.0;
        for (int c = 0; c < d; ++c) acc += row[c] * local[c];
        amp[base | plan.offsets[std::size_t(r)]] = acc;
    }
}

} // namespace

void apply_dense_serial(std::vector<double>& amp, int n_qubits, const GateMatrix& g,
                        std::span<const int> wires) {
    if (int(wires.size()) != g.arity) throw std::invalid_argument("apply_dense: arity mismatch");
    const WirePlan plan(n_qubits, wires);
    const std::uint64_t n_cosets = amp.size() >> plan.k;
    for (std::uint64_t c = 0; c < n_cosets; ++c) apply_block(amp, plan, g.m.data(), plan.expand(c));
}

void apply_dense_parallel(std::vector<double>& amp, int n_qubits, const GateMatrix& g,
                          std::span<const int> wires) {
    if (int(wires.size()) != g.arity) throw std::invalid_argument("apply_dense: arity mismatch");
    const WirePlan plan(n_qubits, wires);
    const std::int64_t n_cosets = std::int64_t(amp.size() >> plan.k);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n_cosets; ++c)
        apply_block(amp, plan, g.m.data(), plan.expand(std::uint64_t(c)));
}

void apply_dense(std::vector<double>& amp, int n_qubits, const GateMatrix& g,
                 std::span<const int> wires) {
    // Parallel pays off only once the coset loop dominates the per-call cost.
    if (parallel_kernels_enabled() && amp.size() >= (std::size_t(1) << 12))
        apply_dense_parallel(amp, n_qubits, g, wires);
    else
        apply_dense_serial(amp, n_qubits, g, wires);
}

} // namespace kernels

void apply_gate_wires(StateVector& state, const GateMatrix& gate, std::span<const int> wires) {
    kernels::apply_dense(state.amp, state.n_qubits, gate, wires);
}

StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::span<const int> qubits) {
    if (int(qubits.size()) != gate.arity) throw std::invalid_argument("apply_gate: arity mismatch");
    StateVector out = state;
    // Public convention: first listed qubit is the most significant local bit.
    std::vector<int> wires(qubits.rbegin(), qubits.rend());
    apply_gate_wires(out, gate, wires);
    return out;
}

} // namespace qfab
