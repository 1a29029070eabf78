#include "test_helpers.hpp"

#include "qfab/symmetry.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>

using namespace qfab;

namespace {

using CMat = Eigen::MatrixXcd;

/// Dense Jordan-Wigner ladder operator (test-side oracle, built directly from
/// the string definition rather than the Pauli machinery under test).
CMat dense_ladder(int M, Spin spin, int p, bool dagger) {
    const int n = 2 * M;
    const int q = 2 * p + (spin == Spin::beta ? 1 : 0);
    std::vector<int> zq;
    if (spin == Spin::alpha) {
        for (int r = 0; r < p; ++r) zq.push_back(2 * r);
    } else {
        for (int r = 0; r < p; ++r) zq.push_back(2 * r + 1);
        for (int r = 0; r < M; ++r) zq.push_back(2 * r);
    }
    const std::size_t dim = std::size_t(1) << n;
    CMat out = CMat::Zero(Eigen::Index(dim), Eigen::Index(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const bool occ = (col >> q) & 1;
        if (dagger == occ) continue; // creation needs empty, annihilation occupied
        double sign = 1.0;
        for (int z : zq)
            if ((col >> z) & 1) sign = -sign;
        out(Eigen::Index(col ^ (1ULL << q)), Eigen::Index(col)) = sign;
    }
    return out;
}

CMat dense_s_squared(int M) {
    const std::size_t dim = std::size_t(1) << (2 * M);
    CMat sm = CMat::Zero(Eigen::Index(dim), Eigen::Index(dim));
    CMat na = sm, nb = sm;
    for (int p = 0; p < M; ++p) {
        sm += dense_ladder(M, Spin::beta, p, true) * dense_ladder(M, Spin::alpha, p, false);
        na += dense_ladder(M, Spin::alpha, p, true) * dense_ladder(M, Spin::alpha, p, false);
        nb += dense_ladder(M, Spin::beta, p, true) * dense_ladder(M, Spin::beta, p, false);
    }
    const CMat sz = 0.5 * (na - nb);
    return sm * sm.adjoint() + sz + sz * sz;
}

} // namespace

TEST_CASE("number operators count per-spin occupations") {
    const PauliSum na = number_operator(2, Spin::alpha);
    CHECK(expectation(StateVector::basis_state(4, 5), na) == doctest::Approx(2.0));
    CHECK(expectation(StateVector::basis_state(4, 0), number_operator(2, Spin::beta)) ==
          doctest::Approx(0.0));
    Rng rng(5);
    const PauliSum na3 = number_operator(3, Spin::alpha);
    for (int rep = 0; rep < 20; ++rep) {
        const std::uint64_t det = rng.next_u64() & 0x3f;
        const int pop = std::popcount(det & 0x15ULL); // alpha bits 0, 2, 4
        CHECK(expectation(StateVector::basis_state(6, det), na3) == doctest::Approx(pop));
    }
}

TEST_CASE("spin-squared expansion matches the ladder-operator construction") {
    for (int M : {1, 2, 3}) {
        const GateMatrix got = s_squared_pauli(M).to_dense(2 * M);
        const CMat want = dense_s_squared(M);
        double maxdiff = 0.0;
        for (int r = 0; r < got.dim(); ++r)
            for (int c = 0; c < got.dim(); ++c) {
                CHECK(std::abs(want(r, c).imag()) < 1e-12);
                maxdiff = std::max(maxdiff, std::abs(got.at(r, c) - want(r, c).real()));
            }
        CAPTURE(M);
        CHECK(maxdiff < 1e-12);
    }
}

TEST_CASE("spin-squared seniority-two block and high-spin eigenvalue") {
    const GateMatrix s2 = s_squared_pauli(2).to_dense(4);
    CHECK(s2.at(6, 6) == doctest::Approx(1.0));
    CHECK(s2.at(6, 9) == doctest::Approx(-1.0));
    CHECK(s2.at(9, 6) == doctest::Approx(-1.0));
    CHECK(s2.at(9, 9) == doctest::Approx(1.0));
    CHECK(expectation(StateVector::basis_state(4, 5), s_squared_pauli(2)) == doctest::Approx(2.0));
}

TEST_CASE("IrrepKey validity") {
    CHECK(IrrepKey{4, 2, 2, 0}.valid());
    CHECK(IrrepKey{4, 0, 2, 2}.valid());
    CHECK_FALSE(IrrepKey{4, 2, 2, 1}.valid()); // parity
    CHECK_FALSE(IrrepKey{4, 0, 2, 0}.valid()); // below |na - nb|
    CHECK_FALSE(IrrepKey{4, 4, 4, 2}.valid()); // above 2M - N
}

TEST_CASE("CSF basis for the two-orbital sectors matches the catalogue") {
    const SectorBasis s11 = csf_basis(2, 1, 1);
    REQUIRE(s11.csf_blocks.size() == 2);
    CHECK(s11.csf_blocks[0].first == 0);
    CHECK(s11.csf_blocks[0].second.cols() == 3);
    CHECK(s11.csf_blocks[1].first == 2);
    CHECK(s11.csf_blocks[1].second.cols() == 1);
    CHECK(s11.det_indices == std::vector<std::uint64_t>{3, 6, 9, 12});

    const SectorBasis s10 = csf_basis(2, 1, 0);
    REQUIRE(s10.csf_blocks.size() == 1);
    CHECK(s10.csf_blocks[0].first == 1);
    const Eigen::MatrixXd& blk = s10.csf_blocks[0].second;
    REQUIRE(blk.cols() == 2);
    CHECK(blk(0, 0) == doctest::Approx(1.0)); // |#1>
    CHECK(blk(1, 1) == doctest::Approx(1.0)); // |#4>

    const SectorBasis s22 = csf_basis(2, 2, 2);
    REQUIRE(s22.total_dim() == 1);
    CHECK(s22.det_indices == std::vector<std::uint64_t>{15});

    // canonical singlet order: |#3>, then the open-shell combination
    // (|#6> + |#9>)/sqrt(2) with positive sign, then |#12>
    const Eigen::MatrixXd& singlets = s11.block(0);
    CHECK(singlets(0, 0) == doctest::Approx(1.0));
    CHECK(singlets(1, 1) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(singlets(2, 1) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(singlets(3, 2) == doctest::Approx(1.0));
}

TEST_CASE("CSF columns are orthonormal spin eigenvectors for all M <= 4 sectors") {
    for (int M = 1; M <= 4; ++M) {
        const GateMatrix s2 = s_squared_pauli(M).to_dense(2 * M);
        for (int na = 0; na <= M; ++na)
            for (int nb = 0; nb <= M; ++nb) {
                const SectorBasis basis = csf_basis(M, na, nb);
                long total = 0;
                for (const auto& [S, blk] : basis.csf_blocks) {
                    const Eigen::MatrixXd gram = blk.transpose() * blk;
                    CHECK((gram - Eigen::MatrixXd::Identity(blk.cols(), blk.cols()))
                              .cwiseAbs()
                              .maxCoeff() < 1e-12);
                    total += blk.cols();
                    const double eig = (S / 2.0) * (S / 2.0 + 1.0);
                    for (int col = 0; col < blk.cols(); ++col) {
                        StateVector v = embed_in_sector(
                            basis, S, Eigen::VectorXd::Unit(blk.cols(), col));
                        StateVector s2v(2 * M);
                        for (int r = 0; r < s2.dim(); ++r)
                            for (int c = 0; c < s2.dim(); ++c)
                                s2v.amp[std::size_t(r)] += s2.at(r, c) * v.amp[std::size_t(c)];
                        for (std::size_t k = 0; k < v.dim(); ++k)
                            REQUIRE(s2v.amp[k] == doctest::Approx(eig * v.amp[k])
                                                      .epsilon(1e-10)
                                                      .scale(1.0));
                    }
                    // closed form agrees with the diagonalization count
                    CHECK(irrep_dimension(IrrepKey{M, na, nb, S}) == blk.cols());
                }
                CHECK(total == long(basis.det_indices.size()));
            }
    }
}

TEST_CASE("closed-form irrep dimensions") {
    CHECK(irrep_dimension(IrrepKey{6, 3, 3, 0}) == 175);
    CHECK(irrep_dimension(IrrepKey{10, 5, 5, 0}) == 19404);
    CHECK(irrep_dimension(IrrepKey{4, 0, 2, 2}) == 6);
    CHECK(irrep_dimension(IrrepKey{6, 0, 3, 3}) == 20);
    CHECK_THROWS(irrep_dimension(IrrepKey{4, 2, 2, 1}));
}

TEST_CASE("irrep enumeration counts and dimension sums") {
    const auto m1 = enumerate_irreps(1);
    REQUIRE(m1.size() == 4);
    long sum1 = 0;
    for (const auto& [k, d] : m1) sum1 += d;
    CHECK(sum1 == 4);

    for (int M = 2; M <= 6; ++M) {
        long sum = 0;
        for (const auto& [k, d] : enumerate_irreps(M)) sum += d;
        CHECK(sum == (1L << (2 * M)));
    }
    CHECK(enumerate_irreps(4).size() == 35);
    CHECK(enumerate_irreps(6).size() == 84);
}

TEST_CASE("random irrep states live in their irrep") {
    const IrrepKey key{2, 1, 1, 0};
    const StateVector s = haar_random_irrep_state(key, 99);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-13));
    for (std::uint64_t i : {0ULL, 1ULL, 2ULL, 4ULL, 5ULL, 7ULL, 15ULL}) CHECK(s.amp[i] == 0.0);
    CHECK(s.amp[6] == doctest::Approx(s.amp[9]).epsilon(1e-13)); // singlet combination only
    CHECK(expectation(s, s_squared_pauli(2)) == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));

    const StateVector one = haar_random_irrep_state(IrrepKey{2, 2, 2, 0}, 3);
    CHECK(std::abs(one.amp[15]) == doctest::Approx(1.0));

    const StateVector a = haar_random_irrep_state(key, 1);
    const StateVector b = haar_random_irrep_state(key, 2);
    const double ov = overlap(a, b);
    CHECK(std::abs(ov) < 1.0 - 1e-6);
    // determinism
    const StateVector a2 = haar_random_irrep_state(key, 1);
    CHECK(test::max_abs_diff(a, a2) == 0.0);
}

TEST_CASE("edge-case classifier examples") {
    const EdgeCaseReport r1 = classify_edge_case(IrrepKey{4, 0, 2, 2});
    CHECK_FALSE(r1.universal_for_Q_fabric);
    CHECK(r1.unconstrained == IrrepKey{2, 0, 0, 0});

    const EdgeCaseReport r2 = classify_edge_case(IrrepKey{4, 2, 2, 0});
    CHECK(r2.universal_for_Q_fabric);
    CHECK(r2.unconstrained == IrrepKey{4, 2, 2, 0});

    const EdgeCaseReport r3 = classify_edge_case(IrrepKey{6, 4, 4, 4});
    CHECK_FALSE(r3.universal_for_Q_fabric);
    CHECK(r3.unconstrained == IrrepKey{2, 2, 2, 0});

    // single particle / single hole irreps stay universal
    CHECK(classify_edge_case(IrrepKey{6, 0, 1, 1}).universal_for_Q_fabric);
    CHECK(classify_edge_case(IrrepKey{6, 6, 5, 1}).universal_for_Q_fabric);
    // a single remaining orbital stays universal
    CHECK(classify_edge_case(IrrepKey{4, 1, 2, 3}).universal_for_Q_fabric);
}

TEST_CASE("classifier selects exactly the non-universal M = 4 irreps") {
    std::vector<IrrepKey> flagged;
    for (const auto& [key, dim] : enumerate_irreps(4))
        if (!classify_edge_case(key).universal_for_Q_fabric) flagged.push_back(key);
    const std::vector<IrrepKey> want = {
        {4, 0, 2, 2}, {4, 1, 1, 2}, {4, 2, 0, 2}, {4, 2, 4, 2}, {4, 3, 3, 2}, {4, 4, 2, 2}};
    REQUIRE(flagged.size() == want.size());
    for (const IrrepKey& k : want) {
        CHECK(std::find(flagged.begin(), flagged.end(), k) != flagged.end());
        CHECK(irrep_dimension(k) == 6);
    }
}
