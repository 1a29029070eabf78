#include "qfab/symmetry.hpp"

#include "qfab/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qfab {

namespace {

int alpha_qubit(int p) { return 2 * p; }
int beta_qubit(int p) { return 2 * p + 1; }

PauliString zz(int q1, int q2) {
    return PauliString{{q1, PauliAxis::Z}, {q2, PauliAxis::Z}};
}

/// X/Y pair on (a_end, b_end) with Z on the interior qubits of one spin chain.
PauliString chain_term(int p, int q, PauliAxis ap, PauliAxis aq, bool beta, int pb, int qb,
                       PauliAxis bp, PauliAxis bq) {
    PauliString s;
    auto qb_of = [&](int orb, bool b) { return b ? beta_qubit(orb) : alpha_qubit(orb); };
    s.factors.emplace_back(qb_of(p, false), ap);
    for (int r = p + 1; r < q; ++r) s.factors.emplace_back(qb_of(r, false), PauliAxis::Z);
    s.factors.emplace_back(qb_of(q, false), aq);
    s.factors.emplace_back(qb_of(pb, true), bp);
    for (int r = pb + 1; r < qb; ++r) s.factors.emplace_back(qb_of(r, true), PauliAxis::Z);
    s.factors.emplace_back(qb_of(qb, true), bq);
    std::sort(s.factors.begin(), s.factors.end());
    (void)beta;
    return s;
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

PauliSum number_operator(int M, Spin spin) {
    if (M < 1) throw std::invalid_argument("number_operator: M >= 1 required");
    PauliSum op;
    op.add(M / 2.0, PauliString{});
    for (int p = 0; p < M; ++p) {
        const int q = spin == Spin::alpha ? alpha_qubit(p) : beta_qubit(p);
        op.add(-0.5, PauliString{{q, PauliAxis::Z}});
    }
    op.canonicalize();
    return op;
}

PauliSum s_squared_pauli(int M) {
    if (M < 1) throw std::invalid_argument("s_squared_pauli: M >= 1 required");
    using enum PauliAxis;
    PauliSum op;
    op.add(3.0 * M / 8.0, PauliString{});
    for (int p = 0; p < M; ++p) op.add(-3.0 / 8.0, zz(alpha_qubit(p), beta_qubit(p)));
    for (int p = 0; p < M; ++p) {
        for (int q = p + 1; q < M; ++q) {
            op.add(1.0 / 8.0, zz(alpha_qubit(p), alpha_qubit(q)));
            op.add(1.0 / 8.0, zz(beta_qubit(p), beta_qubit(q)));
            op.add(-1.0 / 8.0, zz(alpha_qubit(p), beta_qubit(q)));
            op.add(-1.0 / 8.0, zz(beta_qubit(p), alpha_qubit(q)));
            const struct {
                double w;
                PauliAxis a1, a2, b1, b2;
            } terms[8] = {
                {-1.0 / 8, X, X, X, X}, {-1.0 / 8, X, X, Y, Y}, {-1.0 / 8, X, Y, X, Y},
                {+1.0 / 8, X, Y, Y, X}, {+1.0 / 8, Y, X, X, Y}, {-1.0 / 8, Y, X, Y, X},
                {-1.0 / 8, Y, Y, X, X}, {-1.0 / 8, Y, Y, Y, Y},
            };
            for (const auto& t : terms)
                op.add(t.w, chain_term(p, q, t.a1, t.a2, true, p, q, t.b1, t.b2));
        }
    }
    op.canonicalize();
    return op;
}

bool IrrepKey::valid() const {
    if (M < 1 || n_alpha < 0 || n_beta < 0 || n_alpha > M || n_beta > M) return false;
    const int N = n_alpha + n_beta;
    if (S < std::abs(n_alpha - n_beta)) return false;
    if (S > std::min(N, 2 * M - N)) return false;
    if (((N - S) % 2) != 0) return false;
    return true;
}

const Eigen::MatrixXd& SectorBasis::block(int S) const {
    for (const auto& [s, m] : csf_blocks)
        if (s == S) return m;
    throw std::out_of_range("SectorBasis::block: no such spin block");
}

int SectorBasis::total_dim() const {
    int d = 0;
    for (const auto& [s, m] : csf_blocks) d += int(m.cols());
    return d;
}

SectorBasis csf_basis(int M, int n_alpha, int n_beta) {
    if (M < 1 || M > 7) throw std::invalid_argument("csf_basis: M in 1..7 required");
    if (n_alpha < 0 || n_beta < 0 || n_alpha > M || n_beta > M)
        throw std::invalid_argument("csf_basis: occupation out of range");
    SectorBasis basis;
    basis.M = M;
    basis.n_alpha = n_alpha;
    basis.n_beta = n_beta;

    const int n = 2 * M;
    const std::uint64_t alpha_mask = [&] {
        std::uint64_t m = 0;
        for (int p = 0; p < M; ++p) m |= 1ULL << alpha_qubit(p);
        return m;
    }();
    for (std::uint64_t idx = 0; idx < (1ULL << n); ++idx) {
        if (std::popcount(idx & alpha_mask) == n_alpha &&
            std::popcount(idx & ~alpha_mask & ((1ULL << n) - 1)) == n_beta)
            basis.det_indices.push_back(idx);
    }
    if (basis.det_indices.empty()) throw std::invalid_argument("csf_basis: empty sector");
    const int dim = int(basis.det_indices.size());

    // Sector matrix of S^2 in the determinant basis. Individual Pauli strings
    // may leave the sector; those contributions cancel in the sum.
    std::vector<int> pos(std::size_t(1) << n, -1);
    for (int i = 0; i < dim; ++i) pos[basis.det_indices[std::size_t(i)]] = i;
    const PauliSum s2 = s_squared_pauli(M);
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> column(std::size_t(1) << n, 0.0);
    std::vector<std::uint64_t> touched;
    for (int j = 0; j < dim; ++j) {
        touched.clear();
        for (const auto& [w, str] : s2.terms) {
            const BasisAction act = apply_to_basis(str, basis.det_indices[std::size_t(j)]);
            if (column[act.index] == 0.0) touched.push_back(act.index);
            column[act.index] += w * act.sign;
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::uint64_t idx : touched) {
            const int i = pos[idx];
            if (i >= 0)
                mat(i, j) = column[idx];
            else if (std::abs(column[idx]) > 1e-9)
                throw std::logic_error("csf_basis: spin operator left the number sector");
            column[idx] = 0.0;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
    const Eigen::VectorXd evals = solver.eigenvalues();
    const Eigen::MatrixXd evecs = solver.eigenvectors();

    // Group eigenvectors by the integer spin label S with S/2(S/2+1) = eval.
    std::vector<std::pair<int, std::vector<int>>> groups;
    for (int i = 0; i < dim; ++i) {
        const double s_twice = std::sqrt(4.0 * evals(i) + 1.0) - 1.0;
        const int S = int(std::lround(s_twice));
        if (std::abs(s_twice - S) > 1e-6)
            throw std::logic_error("csf_basis: non-integral spin eigenvalue");
        if (groups.empty() || groups.back().first != S) groups.push_back({S, {}});
        groups.back().second.push_back(i);
    }

    for (auto& [S, cols] : groups) {
        // Canonical basis of the eigenspace: Gram-Schmidt on the projector
        // columns in determinant order, sign fixed by the largest component.
        Eigen::MatrixXd V(dim, int(cols.size()));
        for (int c = 0; c < int(cols.size()); ++c) V.col(c) = evecs.col(cols[std::size_t(c)]);
        const Eigen::MatrixXd proj = V * V.transpose();
        Eigen::MatrixXd out(dim, int(cols.size()));
        int found = 0;
        for (int r = 0; r < dim && found < int(cols.size()); ++r) {
            Eigen::VectorXd v = proj.col(r);
            for (int c = 0; c < found; ++c) v -= out.col(c).dot(v) * out.col(c);
            const double nrm = v.norm();
            if (nrm < 1e-8) continue;
            v /= nrm;
            int imax = 0;
            for (int i = 1; i < dim; ++i)
                if (std::abs(v(i)) > std::abs(v(imax)) + 1e-14) imax = i;
            if (v(imax) < 0) v = -v;
            out.col(found++) = v;
        }
        if (found != int(cols.size()))
            throw std::logic_error("csf_basis: eigenspace basis construction failed");
        basis.csf_blocks.emplace_back(S, std::move(out));
    }
    return basis;
}

long irrep_dimension(const IrrepKey& key) {
    if (!key.valid()) throw std::invalid_argument("irrep_dimension: invalid key");
    const int N = key.n_alpha + key.n_beta;
    // Weyl-type count with spin s = S/2: (2s+1)/(M+1) C(M+1, N/2-s) C(M+1, N/2+s+1).
    const int half_minus = (N - key.S) / 2;
    const int half_plus = (N + key.S) / 2 + 1;
    const long c1 = binomial(key.M + 1, half_minus);
    const long c2 = binomial(key.M + 1, half_plus);
    return (key.S + 1) * c1 * c2 / (key.M + 1);
}

std::vector<std::pair<IrrepKey, long>> enumerate_irreps(int M) {
    std::vector<std::pair<IrrepKey, long>> out;
    for (int na = 0; na <= M; ++na)
        for (int nb = 0; nb <= M; ++nb)
            for (int S = std::abs(na - nb); S <= std::min(na + nb, 2 * M - na - nb); S += 2) {
                IrrepKey key{M, na, nb, S};
                if (!key.valid()) continue;
                const long d = irrep_dimension(key);
                if (d > 0) out.emplace_back(key, d);
            }
    return out;
}

StateVector embed_in_sector(const SectorBasis& basis, int S, const Eigen::VectorXd& coeffs) {
    const Eigen::MatrixXd& blk = basis.block(S);
    if (coeffs.size() != blk.cols())
        throw std::invalid_argument("embed_in_sector: coefficient count mismatch");
    const Eigen::VectorXd det_coeffs = blk * coeffs;
    StateVector state(2 * basis.M);
    for (int i = 0; i < det_coeffs.size(); ++i)
        state.amp[basis.det_indices[std::size_t(i)]] = det_coeffs(i);
    return state;
}

StateVector haar_random_irrep_state(const IrrepKey& key, std::uint64_t seed) {
    if (!key.valid()) throw std::invalid_argument("haar_random_irrep_state: invalid key");
    if (key.M > 7) throw std::invalid_argument("haar_random_irrep_state: M <= 7 required");
    const SectorBasis basis = csf_basis(key.M, key.n_alpha, key.n_beta);
    const Eigen::MatrixXd& blk = basis.block(key.S);
    Rng rng(seed);
    Eigen::VectorXd c(blk.cols());
    for (int i = 0; i < c.size(); ++i) c(i) = rng.gaussian();
    c.normalize();
    return embed_in_sector(basis, key.S, c);
}

EdgeCaseReport classify_edge_case(const IrrepKey& key) {
    if (!key.valid()) throw std::invalid_argument("classify_edge_case: invalid key");
    EdgeCaseReport rep;
    int na = key.n_alpha, nb = key.n_beta;
    for (int r = 0; r < key.S; ++r) {
        if (na > nb)
            --na;
        else if (nb > na)
            --nb;
        else {
            --na;
            --nb;
            ++r;
        }
    }
    const int Mu = key.M - key.S;
    rep.unconstrained = IrrepKey{Mu, na, nb, 0};
    const bool all_holes = (na == 0 && nb == 0);
    const bool all_particles = (na == Mu && nb == Mu);
    const int particles = key.n_alpha + key.n_beta;
    const int holes = 2 * key.M - particles;
    bool non_universal = (all_holes || all_particles) && Mu >= 2;
    if (particles <= 1 || holes <= 1) non_universal = false;
    rep.universal_for_Q_fabric = !non_universal;
    return rep;
}

} // namespace qfab
