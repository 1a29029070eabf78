#include "qfab/hamiltonian.hpp"

#include "qfab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qfab {

namespace {

int mode_qubit(const LadderOp& op) {
    return 2 * op.orbital + (op.spin == Spin::beta ? 1 : 0);
}

/// Pauli expansion of a single ladder operator: (X -+ iY)/2 times the
/// Jordan-Wigner string. Represented as two weighted strings with complex
/// weights tracked via an i-power and a sign.
struct WeightedString {
    std::complex<double> w;
    PauliString s;
};

std::vector<WeightedString> ladder_strings(const LadderOp& op, int M) {
    if (op.orbital < 0 || op.orbital >= M)
        throw std::out_of_range("jordan_wigner: orbital index out of range");
    std::vector<std::pair<int, PauliAxis>> string_z;
    if (op.spin == Spin::alpha) {
        for (int r = 0; r < op.orbital; ++r) string_z.emplace_back(2 * r, PauliAxis::Z);
    } else {
        for (int r = 0; r < op.orbital; ++r) string_z.emplace_back(2 * r + 1, PauliAxis::Z);
        for (int r = 0; r < M; ++r) string_z.emplace_back(2 * r, PauliAxis::Z);
    }
    const int q = mode_qubit(op);
    const std::complex<double> iy = op.dagger ? std::complex<double>(0, -0.5)
                                              : std::complex<double>(0, 0.5);
    std::vector<WeightedString> out;
    for (int part = 0; part < 2; ++part) {
        PauliString s;
        s.factors = string_z;
        s.factors.emplace_back(q, part == 0 ? PauliAxis::X : PauliAxis::Y);
        std::sort(s.factors.begin(), s.factors.end());
        out.push_back({part == 0 ? std::complex<double>(0.5, 0) : iy, std::move(s)});
    }
    return out;
}

} // namespace

PauliSum jordan_wigner(const FermionOp& op, int M) {
    // Accumulate with complex coefficients, then require the imaginary parts
    // to cancel (they do for any Hermitian real combination).
    std::vector<std::pair<std::complex<double>, PauliString>> acc;
    for (const FermionTerm& term : op.terms) {
        std::vector<WeightedString> prod = {{std::complex<double>(term.coeff, 0), PauliString{}}};
        for (const LadderOp& lop : term.ops) {
            const auto factors = ladder_strings(lop, M);
            std::vector<WeightedString> next;
            next.reserve(prod.size() * factors.size());
            for (const auto& a : prod) {
                for (const auto& b : factors) {
                    PauliProduct p = multiply(a.s, b.s);
                    std::complex<double> w = a.w * b.w;
                    switch (p.i_power) {
                        case 1: w *= std::complex<double>(0, 1); break;
                        case 2: w = -w; break;
                        case 3: w *= std::complex<double>(0, -1); break;
                        default: break;
                    }
                    next.push_back({w, std::move(p.string)});
                }
            }
            prod = std::move(next);
        }
        for (auto& ws : prod) acc.emplace_back(ws.w, std::move(ws.s));
    }
    std::sort(acc.begin(), acc.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    PauliSum out;
    std::size_t i = 0;
    while (i < acc.size()) {
        std::complex<double> w = acc[i].first;
        std::size_t j = i + 1;
        while (j < acc.size() && acc[j].second == acc[i].second) w += acc[j++].first;
        if (std::abs(w.imag()) > 1e-10)
            throw std::invalid_argument("jordan_wigner: operator is not real symmetric");
        if (std::abs(w.real()) > 1e-13) out.add(w.real(), acc[i].second);
        i = j;
    }
    out.canonicalize();
    return out;
}

void IntegralSet::set_g(int p, int q, int r, int s, double value) {
    g_at(p, q, r, s) = value;
    g_at(q, p, r, s) = value;
    g_at(p, q, s, r) = value;
    g_at(q, p, s, r) = value;
    g_at(r, s, p, q) = value;
    g_at(s, r, p, q) = value;
    g_at(r, s, q, p) = value;
    g_at(s, r, q, p) = value;
}

void IntegralSet::check_symmetry(double tol) const {
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) {
            if (std::abs(h_at(p, q) - h_at(q, p)) > tol)
                throw std::invalid_argument("IntegralSet: h is not symmetric");
            for (int r = 0; r < M; ++r)
                for (int s = 0; s < M; ++s) {
                    const double v = g_at(p, q, r, s);
                    if (std::abs(v - g_at(q, p, r, s)) > tol ||
                        std::abs(v - g_at(p, q, s, r)) > tol ||
                        std::abs(v - g_at(r, s, p, q)) > tol)
                        throw std::invalid_argument("IntegralSet: g violates 8-fold symmetry");
                }
        }
}

PauliSum from_integrals(const IntegralSet& ints) {
    ints.check_symmetry();
    const int M = ints.M;
    FermionOp op;
    if (ints.e_core != 0.0) op.add(ints.e_core, {});
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) {
            const double h = ints.h_at(p, q);
            if (h == 0.0) continue;
            for (Spin sp : {Spin::alpha, Spin::beta})
                op.add(h, {{p, sp, true}, {q, sp, false}});
        }
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            for (int r = 0; r < M; ++r)
                for (int s = 0; s < M; ++s) {
                    const double g = ints.g_at(p, q, r, s);
                    if (g == 0.0) continue;
                    for (Spin s1 : {Spin::alpha, Spin::beta})
                        for (Spin s2 : {Spin::alpha, Spin::beta})
                            op.add(0.5 * g, {{p, s1, true},
                                             {r, s2, true},
                                             {s, s2, false},
                                             {q, s1, false}});
                }
    return jordan_wigner(op, M);
}

namespace {

std::string upper(std::string s) {
    for (char& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

IntegralSet read_fcidump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_fcidump: cannot open " + path);
    std::string header;
    std::string line;
    // Header: from a line containing "&FCI" up to "&END" or "/".
    bool in_header = false, done_header = false;
    std::vector<std::string> body;
    while (std::getline(in, line)) {
        std::string up = upper(line);
        if (!done_header) {
            if (!in_header) {
                auto pos = up.find("&FCI");
                if (pos == std::string::npos)
                    throw std::runtime_error("read_fcidump: missing &FCI header");
                in_header = true;
                header += up.substr(pos + 4);
            } else {
                header += " " + up;
            }
            auto end = header.find("&END");
            if (end == std::string::npos) end = header.find('/');
            if (end != std::string::npos) {
                header = header.substr(0, end);
                done_header = true;
            }
            continue;
        }
        body.push_back(line);
    }
    if (!done_header) throw std::runtime_error("read_fcidump: unterminated header");

    auto header_int = [&](const std::string& key) -> long {
        auto pos = header.find(key);
        if (pos == std::string::npos) return -1;
        pos = header.find('=', pos);
        if (pos == std::string::npos) return -1;
        ++pos;
        while (pos < header.size() && std::isspace(static_cast<unsigned char>(header[pos]))) ++pos;
        return std::strtol(header.c_str() + pos, nullptr, 10);
    };
    const long norb = header_int("NORB");
    if (norb < 1 || norb > 16) throw std::runtime_error("read_fcidump: bad NORB");

    IntegralSet ints{int(norb)};
    for (const std::string& l : body) {
        std::istringstream ss(l);
        double v;
        long i, j, k, m;
        if (!(ss >> v >> i >> j >> k >> m)) {
            // tolerate blank lines
            std::istringstream probe(l);
            std::string tok;
            if (probe >> tok) throw std::runtime_error("read_fcidump: malformed line: " + l);
            continue;
        }
        if (i == 0 && j == 0 && k == 0 && m == 0) {
            ints.e_core = v;
        } else if (k == 0 && m == 0) {
            if (i < 1 || i > norb || j < 1 || j > norb)
                throw std::runtime_error("read_fcidump: index out of range");
            ints.h_at(int(i - 1), int(j - 1)) = v;
            ints.h_at(int(j - 1), int(i - 1)) = v;
        } else {
            if (i < 1 || i > norb || j < 1 || j > norb || k < 1 || k > norb || m < 1 || m > norb)
                throw std::runtime_error("read_fcidump: index out of range");
            ints.set_g(int(i - 1), int(j - 1), int(k - 1), int(m - 1), v);
        }
    }
    return ints;
}

void write_fcidump(const IntegralSet& ints, const std::string& path, int nelec, int ms2) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_fcidump: cannot open " + path);
    out.precision(16);
    out << "&FCI NORB=" << ints.M << ",NELEC=" << (nelec >= 0 ? nelec : ints.M)
        << ",MS2=" << ms2 << ",\n ORBSYM=";
    for (int i = 0; i < ints.M; ++i) out << "1,";
    out << "\n ISYM=1,\n&END\n";
    const int M = ints.M;
    for (int p = 0; p < M; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= (r == p ? q : r); ++s) {
                    const double v = ints.g_at(p, q, r, s);
                    if (v != 0.0)
                        out << std::scientific << v << ' ' << p + 1 << ' ' << q + 1 << ' '
                            << r + 1 << ' ' << s + 1 << '\n';
                }
    for (int p = 0; p < M; ++p)
        for (int q = 0; q <= p; ++q) {
            const double v = ints.h_at(p, q);
            if (v != 0.0)
                out << std::scientific << v << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
        }
    out << std::scientific << ints.e_core << " 0 0 0 0\n";
}

FciResult fci_ground_state(const PauliSum& hamiltonian, const IrrepKey& key) {
    if (!key.valid()) throw std::invalid_argument("fci_ground_state: invalid irrep");
    if (key.M > 7) throw std::invalid_argument("fci_ground_state: M <= 7 required");
    const SectorBasis basis = csf_basis(key.M, key.n_alpha, key.n_beta);
    const int dim = int(basis.det_indices.size());
    const int n = 2 * key.M;

    std::vector<int> pos(std::size_t(1) << n, -1);
    for (int i = 0; i < dim; ++i) pos[basis.det_indices[std::size_t(i)]] = i;
    Eigen::MatrixXd hsec = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> column(std::size_t(1) << n, 0.0);
    std::vector<std::uint64_t> touched;
    for (int j = 0; j < dim; ++j) {
        touched.clear();
        for (const auto& [w, s] : hamiltonian.terms) {
            const BasisAction act = apply_to_basis(s, basis.det_indices[std::size_t(j)]);
            if (column[act.index] == 0.0) touched.push_back(act.index);
            column[act.index] += w * act.sign;
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::uint64_t idx : touched) {
            const int i = pos[idx];
            if (i >= 0)
                hsec(i, j) = column[idx];
            else if (std::abs(column[idx]) > 1e-8)
                throw std::invalid_argument(
                    "fci_ground_state: Hamiltonian does not conserve the particle sector");
            column[idx] = 0.0;
        }
    }

    // Full CSF transform; off-diagonal spin blocks witness broken S^2 symmetry.
    Eigen::MatrixXd all(dim, dim);
    std::vector<std::pair<int, int>> ranges; // (S, start col)
    int col = 0;
    for (const auto& [S, blk] : basis.csf_blocks) {
        all.middleCols(col, int(blk.cols())) = blk;
        ranges.emplace_back(S, col);
        col += int(blk.cols());
    }
    const Eigen::MatrixXd hcsf = all.transpose() * hsec * all;
    for (std::size_t a = 0; a < ranges.size(); ++a) {
        const int ca = ranges[a].second;
        const int wa = int(basis.csf_blocks[a].second.cols());
        for (std::size_t b = a + 1; b < ranges.size(); ++b) {
            const int cb = ranges[b].second;
            const int wb = int(basis.csf_blocks[b].second.cols());
            if (hcsf.block(ca, cb, wa, wb).cwiseAbs().maxCoeff() > 1e-8)
                throw std::invalid_argument(
                    "fci_ground_state: Hamiltonian couples different spin sectors");
        }
    }

    // Diagonalize the requested spin block.
    int target = -1;
    for (std::size_t a = 0; a < ranges.size(); ++a)
        if (ranges[a].first == key.S) target = int(a);
    if (target < 0) throw std::invalid_argument("fci_ground_state: empty irrep");
    const int c0 = ranges[std::size_t(target)].second;
    const int w = int(basis.csf_blocks[std::size_t(target)].second.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hcsf.block(c0, c0, w, w));
    Eigen::VectorXd ground = solver.eigenvectors().col(0);
    int imax = 0;
    for (int i = 1; i < ground.size(); ++i)
        if (std::abs(ground(i)) > std::abs(ground(imax)) + 1e-14) imax = i;
    if (ground(imax) < 0) ground = -ground;

    FciResult res;
    res.energy = solver.eigenvalues()(0);
    res.state = embed_in_sector(basis, key.S, ground);
    return res;
}

IntegralSet random_symmetric_integrals(int M, std::uint64_t seed) {
    Rng rng(seed);
    IntegralSet ints(M);
    for (int p = 0; p < M; ++p)
        for (int q = 0; q <= p; ++q) {
            const double v = rng.gaussian();
            ints.h_at(p, q) = v;
            ints.h_at(q, p) = v;
        }
    for (int p = 0; p < M; ++p)
        for (int q = 0; q <= p; ++q)
            for (int r = 0; r <= p; ++r)
                for (int s = 0; s <= (r == p ? q : r); ++s)
                    ints.set_g(p, q, r, s, 0.25 * rng.gaussian());
    ints.e_core = rng.gaussian();
    return ints;
}

PauliSum model_hamiltonian(const std::string& name, int M, const ModelParams& params,
                           std::uint64_t seed) {
    if (M < 1 || M > 7) throw std::invalid_argument("model_hamiltonian: M in 1..7 required");
    if (name == "hubbard_chain") {
        FermionOp op;
        for (int p = 0; p + 1 < M; ++p)
            for (Spin sp : {Spin::alpha, Spin::beta}) {
                op.add(-params.t, {{p, sp, true}, {p + 1, sp, false}});
                op.add(-params.t, {{p + 1, sp, true}, {p, sp, false}});
            }
        for (int p = 0; p < M; ++p)
            op.add(params.U,
                   {{p, Spin::alpha, true}, {p, Spin::alpha, false},
                    {p, Spin::beta, true}, {p, Spin::beta, false}});
        return jordan_wigner(op, M);
    }
    if (name == "pairing") {
        FermionOp op;
        for (int p = 0; p < M; ++p)
            for (Spin sp : {Spin::alpha, Spin::beta})
                op.add(params.delta * p, {{p, sp, true}, {p, sp, false}});
        for (int p = 0; p < M; ++p)
            for (int q = 0; q < M; ++q)
                op.add(-params.g, {{p, Spin::alpha, true},
                                   {p, Spin::beta, true},
                                   {q, Spin::beta, false},
                                   {q, Spin::alpha, false}});
        return jordan_wigner(op, M);
    }
    if (name == "random_symmetric") return from_integrals(random_symmetric_integrals(M, seed));
    throw std::invalid_argument("model_hamiltonian: unknown model " + name);
}

IntegralSet rotate_integrals(const IntegralSet& ints, const Eigen::MatrixXd& C) {
    const int M = ints.M;
    if (C.rows() != M || C.cols() != M)
        throw std::invalid_argument("rotate_integrals: dimension mismatch");
    IntegralSet out(M);
    out.e_core = ints.e_core;
    Eigen::MatrixXd h(M, M);
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) h(p, q) = ints.h_at(p, q);
    const Eigen::MatrixXd hr = C.transpose() * h * C;
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q) out.h_at(p, q) = hr(p, q);
    // g'_{pqrs} = sum_{abcd} C_ap C_bq C_cr C_ds g_{abcd}, one index at a time.
    std::vector<double> t1(ints.g.size(), 0.0), t2(ints.g.size(), 0.0);
    auto idx = [M](int a, int b, int c, int d) {
        return ((std::size_t(a) * M + b) * M + c) * M + d;
    };
    for (int p = 0; p < M; ++p)
        for (int b = 0; b < M; ++b)
            for (int c = 0; c < M; ++c)
                for (int d = 0; d < M; ++d) {
                    double acc = 0;
                    for (int a = 0; a < M; ++a) acc += C(a, p) * ints.g[idx(a, b, c, d)];
                    t1[idx(p, b, c, d)] = acc;
                }
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            for (int c = 0; c < M; ++c)
                for (int d = 0; d < M; ++d) {
                    double acc = 0;
                    for (int b = 0; b < M; ++b) acc += C(b, q) * t1[idx(p, b, c, d)];
                    t2[idx(p, q, c, d)] = acc;
                }
    std::fill(t1.begin(), t1.end(), 0.0);
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            for (int r = 0; r < M; ++r)
                for (int d = 0; d < M; ++d) {
                    double acc = 0;
                    for (int c = 0; c < M; ++c) acc += C(c, r) * t2[idx(p, q, c, d)];
                    t1[idx(p, q, r, d)] = acc;
                }
    for (int p = 0; p < M; ++p)
        for (int q = 0; q < M; ++q)
            for (int r = 0; r < M; ++r)
                for (int s = 0; s < M; ++s) {
                    double acc = 0;
                    for (int d = 0; d < M; ++d) acc += C(d, s) * t1[idx(p, q, r, d)];
                    out.g[idx(p, q, r, s)] = acc;
                }
    return out;
}

} // namespace qfab
