#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qfab {

/// Small dense real gate matrix acting on `arity` qubits, row-major,
/// dimension 2^arity. All gates in this library are real orthogonal.
struct GateMatrix {
    int arity = 0;
    std::vector<double> m;

    GateMatrix() = default;
    explicit GateMatrix(int k) : arity(k), m(std::size_t(1) << (2 * k), 0.0) {}

    int dim() const { return 1 << arity; }
    double& at(int r, int c) { return m[std::size_t(r) * dim() + c]; }
    double at(int r, int c) const { return m[std::size_t(r) * dim() + c]; }

    static GateMatrix identity(int k);
    GateMatrix transpose() const;
    bool is_orthogonal(double tol = 1e-12) const;
};

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);

/// Real-amplitude state over 2^n_qubits computational basis states.
/// Bit k of a basis index is the occupation of qubit k (LSB = qubit 0).
struct StateVector {
    int n_qubits = 0;
    std::vector<double> amp;

    StateVector() = default;
    explicit StateVector(int n) : n_qubits(n), amp(std::size_t(1) << n, 0.0) {}

    static StateVector basis_state(int n, std::uint64_t index);

    std::size_t dim() const { return amp.size(); }
    double norm() const;
    void normalize();
};

/// Real inner product <a|b>. Throws on dimension mismatch.
double overlap(const StateVector& a, const StateVector& b);

/// Toggle the data-parallel kernels (on by default). The serial reference
/// path is always available through the *_serial entry points.
void set_parallel_kernels(bool enabled);
bool parallel_kernels_enabled();

namespace kernels {

/// In-place dense gate application. `wires` lists one physical qubit per
/// local index bit, least-significant first; they must be distinct and
/// in range. Works for any square matrix (also non-orthogonal generators).
void apply_dense_serial(std::vector<double>& amp, int n_qubits, const GateMatrix& g,
                        std::span<const int> wires);
void apply_dense_parallel(std::vector<double>& amp, int n_qubits, const GateMatrix& g,
                          std::span<const int> wires);
void apply_dense(std::vector<double>& amp, int n_qubits, const GateMatrix& g,
                 std::span<const int> wires);

} // namespace kernels

/// Applies `gate` on the listed qubits, identity elsewhere. The first listed
/// qubit carries the most significant bit of the gate's local index (the top
/// wire of a circuit diagram). Returns the new state.
StateVector apply_gate(const StateVector& state, const GateMatrix& gate,
                       std::span<const int> qubits);

/// In-place variant of apply_gate with the library-internal wire order
/// (wires[i] = physical qubit of local bit i).
void apply_gate_wires(StateVector& state, const GateMatrix& gate, std::span<const int> wires);

} // namespace qfab
