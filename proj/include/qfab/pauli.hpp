#pragma once

#include "qfab/state_vector.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qfab {

enum class PauliAxis : std::uint8_t { X, Y, Z };

/// Tensor product of single-qubit Pauli factors over a subset of qubits,
/// stored sparsely as (qubit, axis) sorted by qubit. As an operator on real
/// statevectors a string with an even number of Y factors is real; odd-Y
/// strings are purely imaginary.
struct PauliString {
    std::vector<std::pair<int, PauliAxis>> factors;

    PauliString() = default;
    PauliString(std::initializer_list<std::pair<int, PauliAxis>> f);

    int y_count() const;
    int max_qubit() const;
    bool operator==(const PauliString& o) const { return factors == o.factors; }
    bool operator<(const PauliString& o) const { return factors < o.factors; }

    std::string to_string() const;

    /// Bit masks over qubit indices: flip = X|Y support, sign = Z|Y support.
    std::uint64_t flip_mask() const;
    std::uint64_t sign_mask() const;
};

/// product = phase * string, phase an integer power of i (0..3).
struct PauliProduct {
    PauliString string;
    int i_power = 0;
};
PauliProduct multiply(const PauliString& a, const PauliString& b);

/// P|I> = phase * |I ^ flip>. For even-Y strings the phase is +-1 and is
/// returned as `sign`; odd-Y strings are rejected.
struct BasisAction {
    std::uint64_t index;
    double sign;
};
BasisAction apply_to_basis(const PauliString& p, std::uint64_t index);

/// Real-weighted sum of Pauli strings. Canonical form: strings sorted and
/// unique, zero coefficients removed. A valid observable has an even Y count
/// in every term (real symmetric operator).
struct PauliSum {
    std::vector<std::pair<double, PauliString>> terms;

    PauliSum() = default;

    void add(double coeff, PauliString s);
    PauliSum& operator+=(const PauliSum& o);
    PauliSum& operator*=(double c);

    /// Merge duplicates, sort, drop coefficients below `drop_tol`.
    void canonicalize(double drop_tol = 1e-13);

    bool all_terms_real() const;
    int max_qubit() const;
    std::size_t size() const { return terms.size(); }

    /// Coefficient of the identity string (0 if absent).
    double identity_coefficient() const;

    /// Dense matrix over n qubits; intended for small n in tests and oracles.
    GateMatrix to_dense(int n_qubits) const;
};

PauliSum operator*(const PauliSum& a, const PauliSum& b);

/// <psi|op|psi>. Throws if a term has odd Y count or acts out of range.
double expectation(const StateVector& state, const PauliSum& op);

/// op|psi> for real (even-Y) sums.
StateVector apply(const PauliSum& op, const StateVector& state);

namespace kernels {
double pauli_expectation_serial(const std::vector<double>& amp, std::uint64_t flip,
                                std::uint64_t sign_mask, double coeff);
double pauli_expectation_parallel(const std::vector<double>& amp, std::uint64_t flip,
                                  std::uint64_t sign_mask, double coeff);
void pauli_accumulate_serial(const std::vector<double>& amp, std::vector<double>& out,
                             std::uint64_t flip, std::uint64_t sign_mask, double coeff);
void pauli_accumulate_parallel(const std::vector<double>& amp, std::vector<double>& out,
                               std::uint64_t flip, std::uint64_t sign_mask, double coeff);
} // namespace kernels

} // namespace qfab
