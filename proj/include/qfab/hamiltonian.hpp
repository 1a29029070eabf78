#pragma once

#include "qfab/pauli.hpp"
#include "qfab/symmetry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qfab {

/// One creation/annihilation factor; `orbital` indexes the spatial orbital.
struct LadderOp {
    int orbital;
    Spin spin;
    bool dagger;
};

struct FermionTerm {
    double coeff;
    std::vector<LadderOp> ops;
};

/// Real-weighted sum of products of ladder operators.
struct FermionOp {
    std::vector<FermionTerm> terms;

    void add(double coeff, std::vector<LadderOp> ops) {
        terms.push_back({coeff, std::move(ops)});
    }
};

/// Jordan-Wigner mapping with alpha-then-beta string ordering on interleaved
/// qubits: alpha_p strings cover lower alpha modes only, beta_p strings cover
/// lower beta modes plus every alpha mode. The result is canonicalized; for a
/// real symmetric operator every surviving term has even Y count.
PauliSum jordan_wigner(const FermionOp& op, int M);

/// Active-space integrals in chemist notation: h[p][q] one-electron,
/// g[(pq|rs)] two-electron with 8-fold index symmetry, plus a core constant.
struct IntegralSet {
    int M = 0;
    std::vector<double> h; // M*M, h[p*M+q]
    std::vector<double> g; // M^4, g[((p*M+q)*M+r)*M+s]
    double e_core = 0.0;

    explicit IntegralSet(int M_ = 0)
        : M(M_), h(std::size_t(M_) * M_, 0.0),
          g(std::size_t(M_) * M_ * M_ * M_, 0.0) {}

    double& h_at(int p, int q) { return h[std::size_t(p) * M + q]; }
    double h_at(int p, int q) const { return h[std::size_t(p) * M + q]; }
    double& g_at(int p, int q, int r, int s) {
        return g[((std::size_t(p) * M + q) * M + r) * M + s];
    }
    double g_at(int p, int q, int r, int s) const {
        return g[((std::size_t(p) * M + q) * M + r) * M + s];
    }

    /// Writes `value` to (pq|rs) and its 8 symmetry images.
    void set_g(int p, int q, int r, int s, double value);

    void check_symmetry(double tol = 1e-10) const;
};

/// Second-quantized spin-free Hamiltonian from the integrals:
/// E_core + sum h_pq (p'q + pbar'qbar) + 1/2 sum (pq|rs) p' r' s q over spins.
PauliSum from_integrals(const IntegralSet& ints);

/// FCIDUMP text format: namelist header (NORB, NELEC, MS2 tolerated in any
/// order), then "value i j k l" lines with 1-based indices, chemist-notation
/// two-electron integrals, k = l = 0 for one-electron entries and all-zero
/// indices for the core energy.
IntegralSet read_fcidump(const std::string& path);
void write_fcidump(const IntegralSet& ints, const std::string& path, int nelec = -1,
                   int ms2 = 0);

struct FciResult {
    double energy = 0.0;
    StateVector state;
};

/// Lowest eigenpair of H restricted to the irrep, via the CSF basis.
/// Throws if H leaks across the sector or couples spin blocks above 1e-8.
FciResult fci_ground_state(const PauliSum& hamiltonian, const IrrepKey& key);

struct ModelParams {
    double t = 1.0;   // hopping (hubbard_chain)
    double U = 4.0;   // on-site repulsion (hubbard_chain)
    double delta = 1.0; // level spacing (pairing)
    double g = 0.5;   // pair coupling (pairing)
};

/// Built-in model Hamiltonians: "hubbard_chain", "pairing" (level + pair
/// scattering, seniority conserving), "random_symmetric" (random integral
/// set, deterministic per seed). All commute with N_alpha, N_beta and S^2.
PauliSum model_hamiltonian(const std::string& name, int M, const ModelParams& params,
                           std::uint64_t seed = 0);

IntegralSet random_symmetric_integrals(int M, std::uint64_t seed);

/// Basis change h' = C^T h C, g' = rotated two-electron tensor; used by the
/// invariance checks.
IntegralSet rotate_integrals(const IntegralSet& ints, const Eigen::MatrixXd& C);

} // namespace qfab
