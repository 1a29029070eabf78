#include "qfab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qfab {

namespace {
char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        default: return 'Z';
    }
}
} // namespace

PauliString::PauliString(std::initializer_list<std::pair<int, PauliAxis>> f) : factors(f) {
    std::sort(factors.begin(), factors.end());
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i].first == factors[i - 1].first)
            throw std::invalid_argument("PauliString: repeated qubit");
}

int PauliString::y_count() const {
    int n = 0;
    for (const auto& [q, a] : factors) n += (a == PauliAxis::Y);
    return n;
}

int PauliString::max_qubit() const {
    return factors.empty() ? -1 : factors.back().first;
}

std::string PauliString::to_string() const {
    if (factors.empty()) return "I";
    std::string s;
    for (const auto& [q, a] : factors) {
        if (!s.empty()) s += ' ';
        s += axis_char(a);
        s += std::to_string(q);
    }
    return s;
}

std::uint64_t PauliString::flip_mask() const {
    std::uint64_t m = 0;
    for (const auto& [q, a] : factors)
        if (a != PauliAxis::Z) m |= 1ULL << q;
    return m;
}

std::uint64_t PauliString::sign_mask() const {
    std::uint64_t m = 0;
    for (const auto& [q, a] : factors)
        if (a != PauliAxis::X) m |= 1ULL << q;
    return m;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
    // Single-qubit products in (x,z) bit representation; phase tracked as a
    // power of i: sigma_a sigma_b = i^p sigma_c.
    PauliProduct out;
    out.i_power = 0;
    auto xz = [](PauliAxis ax) -> std::pair<int, int> {
        switch (ax) {
            case PauliAxis::X: return {1, 0};
            case PauliAxis::Y: return {1, 1};
            default: return {0, 1};
        }
    };
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j >= b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            out.string.factors.push_back(a.factors[i++]);
        } else if (i >= a.factors.size() || b.factors[j].first < a.factors[i].first) {
            out.string.factors.push_back(b.factors[j++]);
        } else {
            const int q = a.factors[i].first;
            auto [x1, z1] = xz(a.factors[i].second);
            auto [x2, z2] = xz(b.factors[j].second);
            // i^{z1 x2 - x1 z2} times the symplectic correction for Y factors:
            // track the exact phase of sigma_a sigma_b via lookup.
            static const int phase[3][3] = {
                // rows/cols: X, Y, Z; sigma_a sigma_b = i^{phase} sigma_c
                {0, 1, 3},
                {3, 0, 1},
                {1, 3, 0},
            };
            const int ia = int(a.factors[i].second), ib = int(b.factors[j].second);
            const int x = x1 ^ x2, z = z1 ^ z2;
            if (x || z) {
                PauliAxis c = x && z ? PauliAxis::Y : (x ? PauliAxis::X : PauliAxis::Z);
                out.string.factors.emplace_back(q, c);
                out.i_power = (out.i_power + phase[ia][ib]) & 3;
            } else if (ia != ib) {
                throw std::logic_error("multiply: inconsistent identity product");
            }
            ++i, ++j;
        }
    }
    return out;
}

BasisAction apply_to_basis(const PauliString& p, std::uint64_t index) {
    const int ny = p.y_count();
    if (ny & 1) throw std::invalid_argument("apply_to_basis: odd Y count is not real");
    const std::uint64_t flip = p.flip_mask();
    const std::uint64_t smask = p.sign_mask();
    // Y|b> = i(-1)^b |1-b>; paired Y factors give i^{ny} real.
    double sign = (std::popcount(index & smask) & 1) ? -1.0 : 1.0;
    if (ny % 4 == 2) sign = -sign;
    return {index ^ flip, sign};
}

void PauliSum::add(double coeff, PauliString s) { terms.emplace_back(coeff, std::move(s)); }

PauliSum& PauliSum::operator+=(const PauliSum& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

PauliSum& PauliSum::operator*=(double c) {
    for (auto& [w, s] : terms) w *= c;
    return *this;
}

void PauliSum::canonicalize(double drop_tol) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<double, PauliString>> merged;
    for (auto& t : terms) {
        if (!merged.empty() && merged.back().second == t.second)
            merged.back().first += t.first;
        else
            merged.push_back(std::move(t));
    }
    terms.clear();
    for (auto& t : merged)
        if (std::abs(t.first) > drop_tol) terms.push_back(std::move(t));
}

bool PauliSum::all_terms_real() const {
    for (const auto& [w, s] : terms)
        if (s.y_count() & 1) return false;
    return true;
}

int PauliSum::max_qubit() const {
    int m = -1;
    for (const auto& [w, s] : terms) m = std::max(m, s.max_qubit());
    return m;
}

double PauliSum::identity_coefficient() const {
    for (const auto& [w, s] : terms)
        if (s.factors.empty()) return w;
    return 0.0;
}

GateMatrix PauliSum::to_dense(int n_qubits) const {
    if (n_qubits > 14) throw std::invalid_argument("to_dense: too many qubits");
    GateMatrix m(n_qubits);
    const std::uint64_t dim = 1ULL << n_qubits;
    for (const auto& [w, s] : terms) {
        if (s.max_qubit() >= n_qubits) throw std::out_of_range("to_dense: qubit out of range");
        for (std::uint64_t col = 0; col < dim; ++col) {
            const BasisAction act = apply_to_basis(s, col);
            m.at(int(act.index), int(col)) += w * act.sign;
        }
    }
    return m;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    PauliSum out;
    for (const auto& [wa, sa] : a.terms) {
        for (const auto& [wb, sb] : b.terms) {
            PauliProduct p = multiply(sa, sb);
            double w = wa * wb;
            switch (p.i_power) {
                case 0: break;
                case 2: w = -w; break;
                default:
                    throw std::invalid_argument("PauliSum product left an imaginary term");
            }
            out.add(w, std::move(p.string));
        }
    }
    out.canonicalize();
    return out;
}

namespace kernels {

double pauli_expectation_serial(const std::vector<double>& amp, std::uint64_t flip,
                                std::uint64_t sign_mask, double coeff) {
    double acc = 0.0;
    const std::uint64_t n = amp.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        const double s = (std::popcount(i & sign_mask) & 1) ? -coeff : coeff;
        acc += amp[i ^ flip] * s * amp[i];
    }
    return acc;
}

double pauli_expectation_parallel(const std::vector<double>& amp, std::uint64_t flip,
                                  std::uint64_t sign_mask, double coeff) {
    double acc = 0.0;
    const std::int64_t n = std::int64_t(amp.size());
#pragma omp parallel for schedule(static) reduction(+ : acc)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t u = std::uint64_t(i);
        const double s = (std::popcount(u & sign_mask) & 1) ? -coeff : coeff;
        acc += amp[u ^ flip] * s * amp[u];
    }
    return acc;
}

void pauli_accumulate_serial(const std::vector<double>& amp, std::vector<double>& out,
                             std::uint64_t flip, std::uint64_t sign_mask, double coeff) {
    const std::uint64_t n = amp.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        const double s = (std::popcount(i & sign_mask) & 1) ? -coeff : coeff;
        out[i ^ flip] += s * amp[i];
    }
}

void pauli_accumulate_parallel(const std::vector<double>& amp, std::vector<double>& out,
                               std::uint64_t flip, std::uint64_t sign_mask, double coeff) {
    const std::int64_t n = std::int64_t(amp.size());
    // For fixed flip the map i -> i^flip is a bijection, so writes are disjoint.
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint64_t u = std::uint64_t(i);
        const double s = (std::popcount(u & sign_mask) & 1) ? -coeff : coeff;
        out[u ^ flip] += s * amp[u];
    }
}

} // namespace kernels

namespace {
double term_phase(const PauliString& s) {
    return (s.y_count() % 4 == 2) ? -1.0 : 1.0;
}

void check_real_in_range(const PauliSum& op, int n_qubits, const char* who) {
    for (const auto& [w, s] : op.terms) {
        if (s.y_count() & 1)
            throw std::invalid_argument(std::string(who) + ": term with odd Y count is not real");
        if (s.max_qubit() >= n_qubits)
            throw std::out_of_range(std::string(who) + ": qubit index out of range");
    }
}
} // namespace

double expectation(const StateVector& state, const PauliSum& op) {
    check_real_in_range(op, state.n_qubits, "expectation");
    const bool par = parallel_kernels_enabled() && state.dim() >= (std::size_t(1) << 12);
    double acc = 0.0;
    for (const auto& [w, s] : op.terms) {
        const double c = w * term_phase(s);
        acc += par ? kernels::pauli_expectation_parallel(state.amp, s.flip_mask(), s.sign_mask(), c)
                   : kernels::pauli_expectation_serial(state.amp, s.flip_mask(), s.sign_mask(), c);
    }
    return acc;
}

StateVector apply(const PauliSum& op, const StateVector& state) {
    check_real_in_range(op, state.n_qubits, "apply");
    StateVector out(state.n_qubits);
    const bool par = parallel_kernels_enabled() && state.dim() >= (std::size_t(1) << 12);
    for (const auto& [w, s] : op.terms) {
        const double c = w * term_phase(s);
        if (par)
            kernels::pauli_accumulate_parallel(state.amp, out.amp, s.flip_mask(), s.sign_mask(), c);
        else
            kernels::pauli_accumulate_serial(state.amp, out.amp, s.flip_mask(), s.sign_mask(), c);
    }
    return out;
}

} // namespace qfab
