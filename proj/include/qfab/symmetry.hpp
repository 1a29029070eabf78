#pragma once

#include "qfab/pauli.hpp"
#include "qfab/state_vector.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace qfab {

enum class Spin { alpha, beta };

/// Diagonal per-spin particle number operator over 2M interleaved qubits.
PauliSum number_operator(int M, Spin spin);

/// Total-spin-squared operator in its Pauli expansion under the
/// alpha-then-beta Jordan-Wigner ordering. Every term has even Y count.
PauliSum s_squared_pauli(int M);

/// Quantum number triple (n_alpha, n_beta, S); S is twice the physical spin,
/// so the S^2 eigenvalue is S/2 (S/2 + 1).
struct IrrepKey {
    int M = 0;
    int n_alpha = 0;
    int n_beta = 0;
    int S = 0;

    bool valid() const;
    bool operator==(const IrrepKey&) const = default;
};

/// Determinants of one (n_alpha, n_beta) sector and its spin-adapted basis.
/// csf_blocks[i] = (S, column matrix of CSF vectors in the determinant basis),
/// ordered by ascending S; within a block the basis is canonical (projector
/// Gram-Schmidt in determinant order, largest component positive).
struct SectorBasis {
    int M = 0;
    int n_alpha = 0;
    int n_beta = 0;
    std::vector<std::uint64_t> det_indices;
    std::vector<std::pair<int, Eigen::MatrixXd>> csf_blocks;

    const Eigen::MatrixXd& block(int S) const;
    int total_dim() const;
};

SectorBasis csf_basis(int M, int n_alpha, int n_beta);

/// Closed-form irrep dimension; agrees with the S^2-diagonalization count.
long irrep_dimension(const IrrepKey& key);

std::vector<std::pair<IrrepKey, long>> enumerate_irreps(int M);

/// Gaussian sample in the irrep's CSF basis, normalized and mapped back to
/// the computational basis. Deterministic per seed.
StateVector haar_random_irrep_state(const IrrepKey& key, std::uint64_t seed);

/// Embeds CSF-basis coordinates into the full 2^(2M) space.
StateVector embed_in_sector(const SectorBasis& basis, int S, const Eigen::VectorXd& coeffs);

struct EdgeCaseReport {
    bool universal_for_Q_fabric = true;
    IrrepKey unconstrained;
};

/// Flags the high-spin irreps where a pair-exchange plus orbital-rotation
/// fabric cannot be universal: after removing the S unpaired electrons the
/// remaining orbitals hold only holes or only particles. Irreps with at most
/// one particle or one hole in total, and those where at most one orbital
/// remains, stay universal.
EdgeCaseReport classify_edge_case(const IrrepKey& key);

} // namespace qfab
