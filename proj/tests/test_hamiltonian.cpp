#include "test_helpers.hpp"

#include "qfab/hamiltonian.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qfab;
using test::commutator;
using test::max_abs;

namespace {

FermionOp s_squared_fermion(int M) {
    FermionOp op;
    // S- S+ = sum_pq beta_p' alpha_p alpha_q' beta_q
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            op.add(1.0, {{p, Spin::beta, true},
                         {p, Spin::alpha, false},
                         {q, Spin::alpha, true},
                         {q, Spin::beta, false}});
    // Sz = (N_alpha - N_beta) / 2
    for (int p = 0; p < M; ++p) {
        op.add(0.5, {{p, Spin::alpha, true}, {p, Spin::alpha, false}});
        op.add(-0.5, {{p, Spin::beta, true}, {p, Spin::beta, false}});
    }
    // Sz^2 expanded over orbital pairs
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            for (Spin s1 : {Spin::alpha, Spin::beta})
                for (Spin s2 : {Spin::alpha, Spin::beta}) {
                    const double sign = (s1 == s2) ? 0.25 : -0.25;
                    op.add(sign, {{p, s1, true}, {p, s1, false}, {q, s2, true}, {q, s2, false}});
                }
    return op;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("occupation operator under the Jordan-Wigner mapping") {
    FermionOp op;
    op.add(1.0, {{0, Spin::alpha, true}, {0, Spin::alpha, false}});
    const PauliSum h = jordan_wigner(op, 2);
    REQUIRE(h.size() == 2);
    CHECK(h.identity_coefficient() == doctest::Approx(0.5));
    for (const auto& [w, s] : h.terms)
        if (!s.factors.empty()) {
            CHECK(w == doctest::Approx(-0.5));
            CHECK(s == PauliString{{0, PauliAxis::Z}});
        }
}

TEST_CASE("hopping term keeps Z strings on its own spin chain") {
    FermionOp op;
    op.add(1.0, {{0, Spin::alpha, true}, {1, Spin::alpha, false}});
    op.add(1.0, {{1, Spin::alpha, true}, {0, Spin::alpha, false}});
    const PauliSum h = jordan_wigner(op, 2);
    REQUIRE(h.size() == 2);
    for (const auto& [w, s] : h.terms) {
        CHECK(w == doctest::Approx(0.5));
        REQUIRE(s.factors.size() == 2); // adjacent alpha orbitals: no interior
        CHECK(s.factors[0].first == 0);
        CHECK(s.factors[1].first == 2);
        CHECK(s.factors[0].second == s.factors[1].second);
    }
    // non-adjacent alpha orbitals cross one interior alpha qubit
    FermionOp far;
    far.add(1.0, {{0, Spin::alpha, true}, {2, Spin::alpha, false}});
    far.add(1.0, {{2, Spin::alpha, true}, {0, Spin::alpha, false}});
    const PauliSum hfar = jordan_wigner(far, 3);
    for (const auto& [w, s] : hfar.terms) {
        REQUIRE(s.factors.size() == 3);
        CHECK(s.factors[1].first == 2); // alpha qubit of orbital 1
        CHECK(s.factors[1].second == PauliAxis::Z);
    }
    // beta-beta substitution keeps its string on beta qubits (plus parity)
    FermionOp beta;
    beta.add(1.0, {{0, Spin::beta, true}, {2, Spin::beta, false}});
    beta.add(1.0, {{2, Spin::beta, true}, {0, Spin::beta, false}});
    const PauliSum hbeta = jordan_wigner(beta, 3);
    for (const auto& [w, s] : hbeta.terms) {
        REQUIRE(s.factors.size() == 3);
        CHECK(s.factors[1].first == 3); // beta qubit of orbital 1
    }
}

TEST_CASE("total number operator counts set bits") {
    FermionOp op;
    const int M = 3;
    for (int p = 0; p < M; ++p)
        for (Spin sp : {Spin::alpha, Spin::beta})
            op.add(1.0, {{p, sp, true}, {p, sp, false}});
    const PauliSum h = jordan_wigner(op, M);
    Rng rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        const std::uint64_t det = rng.next_u64() & 0x3f;
        CHECK(expectation(StateVector::basis_state(6, det), h) ==
              doctest::Approx(double(std::popcount(det))));
    }
}

TEST_CASE("spin-squared from ladder products equals the direct expansion") {
    for (int M : {1, 2, 3, 4}) {
        PauliSum a = jordan_wigner(s_squared_fermion(M), M);
        PauliSum b = s_squared_pauli(M);
        a.canonicalize();
        b.canonicalize();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.terms[i].second == b.terms[i].second);
            CHECK(a.terms[i].first == doctest::Approx(b.terms[i].first).epsilon(1e-12));
        }
    }
}

TEST_CASE("identity integrals give the total number operator") {
    IntegralSet ints(2);
    ints.h_at(0, 0) = 1.0;
    ints.h_at(1, 1) = 1.0;
    const PauliSum h = from_integrals(ints);
    CHECK(expectation(StateVector::basis_state(4, 3), h) == doctest::Approx(2.0));
    const FciResult res = fci_ground_state(h, IrrepKey{2, 1, 1, 0});
    CHECK(res.energy == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hopping integrals reach energy -2t in the singlet sector") {
    IntegralSet ints(2);
    const double t = 0.8;
    ints.h_at(0, 1) = t;
    ints.h_at(1, 0) = t;
    const FciResult res = fci_ground_state(from_integrals(ints), IrrepKey{2, 1, 1, 0});
    CHECK(res.energy == doctest::Approx(-2.0 * t).epsilon(1e-12));
}

TEST_CASE("integral Hamiltonians commute with the symmetry operators") {
    for (int M : {2, 3}) {
        const GateMatrix h = from_integrals(random_symmetric_integrals(M, 21)).to_dense(2 * M);
        const GateMatrix na = number_operator(M, Spin::alpha).to_dense(2 * M);
        const GateMatrix nb = number_operator(M, Spin::beta).to_dense(2 * M);
        const GateMatrix s2 = s_squared_pauli(M).to_dense(2 * M);
        CHECK(max_abs(commutator(h, na)) < 1e-10);
        CHECK(max_abs(commutator(h, nb)) < 1e-10);
        CHECK(max_abs(commutator(h, s2)) < 1e-10);
    }
    // sector-level check at M = 5: the FCI projection throws on any leakage
    const PauliSum h5 = model_hamiltonian("hubbard_chain", 5, ModelParams{});
    CHECK_NOTHROW(fci_ground_state(h5, IrrepKey{5, 2, 2, 0}));
    const PauliSum r5 = model_hamiltonian("random_symmetric", 5, ModelParams{}, 8);
    CHECK_NOTHROW(fci_ground_state(r5, IrrepKey{5, 2, 2, 0}));
}

TEST_CASE("FCIDUMP parsing") {
    const auto path = temp_file("qfab_test_minimal.fcidump");
    {
        std::ofstream f(path);
        f << "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n&END\n";
        f << " 0.25 1 2 1 2\n";
        f << " -1.0 1 2 0 0\n";
        f << " 0.5 0 0 0 0\n";
    }
    const IntegralSet ints = read_fcidump(path.string());
    CHECK(ints.M == 2);
    CHECK(ints.e_core == doctest::Approx(0.5));
    CHECK(ints.h_at(0, 1) == doctest::Approx(-1.0));
    CHECK(ints.h_at(1, 0) == doctest::Approx(-1.0));
    // 8-fold images of (01|01)
    CHECK(ints.g_at(0, 1, 0, 1) == doctest::Approx(0.25));
    CHECK(ints.g_at(1, 0, 0, 1) == doctest::Approx(0.25));
    CHECK(ints.g_at(0, 1, 1, 0) == doctest::Approx(0.25));
    CHECK(ints.g_at(1, 0, 1, 0) == doctest::Approx(0.25));
    std::filesystem::remove(path);
}

TEST_CASE("FCIDUMP round trip") {
    const IntegralSet ints = random_symmetric_integrals(3, 5);
    const auto path = temp_file("qfab_test_roundtrip.fcidump");
    write_fcidump(ints, path.string(), 4, 0);
    const IntegralSet back = read_fcidump(path.string());
    REQUIRE(back.M == ints.M);
    CHECK(std::abs(back.e_core - ints.e_core) < 1e-14);
    for (std::size_t i = 0; i < ints.h.size(); ++i) CHECK(std::abs(back.h[i] - ints.h[i]) < 1e-14);
    for (std::size_t i = 0; i < ints.g.size(); ++i) CHECK(std::abs(back.g[i] - ints.g[i]) < 1e-14);
    std::filesystem::remove(path);
}

TEST_CASE("FCIDUMP error paths") {
    CHECK_THROWS(read_fcidump("/nonexistent/file.fcidump"));
    const auto path = temp_file("qfab_test_bad.fcidump");
    {
        std::ofstream f(path);
        f << "no header here\n";
    }
    CHECK_THROWS(read_fcidump(path.string()));
    std::filesystem::remove(path);
}

TEST_CASE("two-site Hubbard ground state energy closed form") {
    ModelParams p;
    p.t = 1.0;
    p.U = 4.0;
    const PauliSum h = model_hamiltonian("hubbard_chain", 2, p);
    const FciResult res = fci_ground_state(h, IrrepKey{2, 1, 1, 0});
    const double want = (p.U - std::sqrt(p.U * p.U + 16 * p.t * p.t)) / 2;
    CHECK(res.energy == doctest::Approx(want).epsilon(1e-12));
    CHECK(expectation(res.state, s_squared_pauli(2)) ==
          doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
}

TEST_CASE("model Hamiltonians preserve the symmetries and replay per seed") {
    for (const char* name : {"hubbard_chain", "pairing", "random_symmetric"}) {
        const PauliSum h = model_hamiltonian(name, 3, ModelParams{}, 17);
        const GateMatrix hd = h.to_dense(6);
        CHECK(max_abs(commutator(hd, s_squared_pauli(3).to_dense(6))) < 1e-10);
        CHECK(max_abs(commutator(hd, number_operator(3, Spin::alpha).to_dense(6))) < 1e-10);
    }
    const PauliSum a = model_hamiltonian("random_symmetric", 3, ModelParams{}, 17);
    const PauliSum b = model_hamiltonian("random_symmetric", 3, ModelParams{}, 17);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.terms[i].first == b.terms[i].first);
        CHECK(a.terms[i].second == b.terms[i].second);
    }
    CHECK_THROWS(model_hamiltonian("no_such_model", 3, ModelParams{}));
}

TEST_CASE("FCI energy is invariant under orbital rotations") {
    const IntegralSet ints = random_symmetric_integrals(3, 33);
    // random special orthogonal basis change
    Rng rng(77);
    Eigen::MatrixXd raw(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) raw(r, c) = rng.gaussian();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd Cmat = qr.householderQ();
    if (Cmat.determinant() < 0) Cmat.col(0) *= -1.0;

    const IrrepKey key{3, 2, 1, 1};
    const double e0 = fci_ground_state(from_integrals(ints), key).energy;
    const double e1 = fci_ground_state(from_integrals(rotate_integrals(ints, Cmat)), key).energy;
    CHECK(e0 == doctest::Approx(e1).epsilon(1e-10));
}
