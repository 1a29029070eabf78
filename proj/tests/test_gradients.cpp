#include "test_helpers.hpp"

#include "qfab/fabric.hpp"
#include "qfab/gradients.hpp"
#include "qfab/hamiltonian.hpp"
#include "qfab/symmetry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qfab;

namespace {

constexpr double kPi = std::numbers::pi;

CircuitObjective single_ry_z() {
    Circuit c;
    c.emplace_back(GateKind::RY, std::vector<int>{0},
                   std::vector<AngleExpr>{AngleExpr{1.0, 0.0, 0}});
    PauliSum z;
    z.add(1.0, PauliString{{0, PauliAxis::Z}});
    return energy_objective(std::move(c), std::move(z), StateVector::basis_state(1, 0), 1);
}

CircuitObjective fabric_energy(int M, int layers, std::uint64_t model_seed) {
    FabricSpec spec{FabricKind::Q, M, layers, PiGate::identity, kDefaultGateOrder};
    const PauliSum h = model_hamiltonian("random_symmetric", M, ModelParams{}, model_seed);
    return energy_objective(expand(spec), h, reference_state(M, 1, 1),
                            fabric_param_count(spec));
}

std::vector<double> finite_difference(const CircuitObjective& obj,
                                      const std::vector<double>& params, double step) {
    std::vector<double> g(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        std::vector<double> p = params;
        p[i] += step;
        const double fp = obj.value(p);
        p[i] -= 2 * step;
        const double fm = obj.value(p);
        g[i] = (fp - fm) / (2 * step);
    }
    return g;
}

/// Rebinds every non-constant angle to a fresh slot (keeping scale/offset)
/// so each elementary step becomes an independent parameter.
std::pair<Circuit, std::vector<double>> free_parameters(const Circuit& circuit,
                                                        std::span<const double> params) {
    Circuit out = circuit;
    std::vector<double> values;
    for (GateInstance& g : out)
        for (AngleExpr& a : g.angles)
            if (!a.is_constant()) {
                values.push_back(params[std::size_t(a.param)]);
                a.param = int(values.size()) - 1;
            }
    return {std::move(out), std::move(values)};
}

} // namespace

TEST_CASE("RY expectation gradient has the closed form -sin(theta)") {
    const CircuitObjective obj = single_ry_z();
    Rng rng(81);
    for (int i = 0; i < 20; ++i) {
        const std::vector<double> p{rng.uniform(-kPi, kPi)};
        CHECK(obj.value(p) == doctest::Approx(std::cos(p[0])).epsilon(1e-12));
        const auto g = analytic_gradient(obj, p);
        CHECK(g[0] == doctest::Approx(-std::sin(p[0])).epsilon(1e-12));
    }
}

TEST_CASE("adjoint gradient matches central finite differences") {
    Rng rng(83);
    for (int M : {2, 3}) {
        const CircuitObjective obj = fabric_energy(M, 2, 7);
        std::vector<double> p(std::size_t(obj.n_params));
        for (double& v : p) v = rng.uniform(-kPi, kPi);
        const auto adj = analytic_gradient(obj, p);
        const auto fd = finite_difference(obj, p, 1e-5);
        for (std::size_t i = 0; i < p.size(); ++i)
            CHECK(adj[i] == doctest::Approx(fd[i]).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("overlap-objective gradients match finite differences") {
    Rng rng(85);
    FabricSpec spec{FabricKind::Q, 2, 3, PiGate::identity, kDefaultGateOrder};
    const IrrepKey key{2, 1, 1, 0};
    const CircuitObjective obj =
        overlap_objective(expand(spec), haar_random_irrep_state(key, 5),
                          reference_state(2, 1, 1), fabric_param_count(spec));
    std::vector<double> p(std::size_t(obj.n_params), 0.0);
    for (double& v : p) v = rng.uniform(-kPi, kPi);
    const auto adj = analytic_gradient(obj, p);
    const auto fd = finite_difference(obj, p, 1e-5);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(adj[i] == doctest::Approx(fd[i]).epsilon(1e-7).scale(1.0));
}

TEST_CASE("gradient vanishes when the reference is a circuit eigenstate") {
    // number operator as the Hamiltonian, strategy-B initialization
    FabricSpec spec{FabricKind::Q, 2, 2, PiGate::identity, kDefaultGateOrder};
    const ParamVector init = initialize(spec, InitStrategy::B);
    PauliSum h = number_operator(2, Spin::alpha);
    h += number_operator(2, Spin::beta);
    h.canonicalize();
    const CircuitObjective obj =
        energy_objective(expand(spec), h, reference_state(2, 1, 1), int(init.values.size()));
    const auto g = analytic_gradient(obj, init.values);
    for (double v : g) CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("generator classification per gate kind") {
    const GeneratorReport ry = classify_generator(GateKind::RY);
    CHECK(ry.rule_class == RuleClass::two_term);
    CHECK(ry.eigenvalues.front() == doctest::Approx(-1.0));
    CHECK(ry.eigenvalues.back() == doctest::Approx(1.0));
    CHECK(ry.shift_c == doctest::Approx(0.0));
    CHECK(ry.scale_a == doctest::Approx(1.0));

    const GeneratorReport px = classify_generator(GateKind::QNP_PX);
    CHECK(px.rule_class == RuleClass::four_term);
    CHECK(px.eigenvalues.size() == 16);
    CHECK(px.eigenvalues.front() == doctest::Approx(-1.0));
    CHECK(px.eigenvalues.back() == doctest::Approx(1.0));

    CHECK(classify_generator(GateKind::CRY).rule_class == RuleClass::four_term);
    CHECK(classify_generator(GateKind::G).rule_class == RuleClass::four_term);
    CHECK(classify_generator(GateKind::QNP_OR).rule_class == RuleClass::unsupported);
    CHECK(classify_generator(GateKind::QNP_OR).scale_a == doctest::Approx(4.0));
    CHECK_THROWS(classify_generator(GateKind::F));
    CHECK_THROWS(classify_generator(GateKind::X));
}

TEST_CASE("shift rule construction") {
    const ShiftRule two = make_shift_rule(RuleClass::two_term, kPi / 2);
    REQUIRE(two.terms.size() == 2);
    CHECK(two.terms[0].first == doctest::Approx(0.5));
    CHECK(two.terms[1].first == doctest::Approx(-0.5));

    const ShiftRule sym = make_shift_rule(RuleClass::four_term, kPi / 2, kPi);
    REQUIRE(sym.terms.size() == 4);
    CHECK(sym.terms[0].first == doctest::Approx(0.5));
    CHECK(sym.terms[2].first == doctest::Approx(-(std::sqrt(2.0) - 1) / 4));

    const ShiftRule opt = make_shift_rule(RuleClass::four_term, 0, std::nullopt, true);
    CHECK(opt.terms[0].first == doctest::Approx((std::sqrt(2.0) + 1) / (4 * std::sqrt(2.0))));
    CHECK(opt.terms[0].second == doctest::Approx(kPi / 2));
    CHECK(opt.terms[2].second == doctest::Approx(3 * kPi / 2));
    CHECK(opt.terms[2].first == doctest::Approx(-(std::sqrt(2.0) - 1) / (4 * std::sqrt(2.0))));

    CHECK_THROWS(make_shift_rule(RuleClass::two_term, kPi));
    CHECK_THROWS(make_shift_rule(RuleClass::four_term, 1.0, 1.0)); // degenerate pair
    CHECK_THROWS(make_shift_rule(RuleClass::unsupported, 1.0));    // no three-shift rule
}

TEST_CASE("four-term coefficients satisfy the defining conditions") {
    Rng rng(87);
    for (int rep = 0; rep < 25; ++rep) {
        const double alpha = rng.uniform(0.3, 2.8);
        const double beta = rng.uniform(3.2, 5.9);
        ShiftRule r;
        try {
            r = make_shift_rule(RuleClass::four_term, alpha, beta);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const double d1 = r.terms[0].first;
        const double d2 = -r.terms[2].first;
        CHECK(d1 * std::sin(alpha / 2) - d2 * std::sin(beta / 2) ==
              doctest::Approx(0.25).epsilon(1e-12));
        CHECK(d1 * std::sin(alpha) - d2 * std::sin(beta) ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("shift gradients agree with the adjoint gradient at random points") {
    const CircuitObjective obj = fabric_energy(3, 2, 11);
    Rng rng(91);
    const ShiftRule sym = make_shift_rule(RuleClass::four_term, kPi / 2, kPi);
    const ShiftRule opt = make_shift_rule(RuleClass::four_term, 0, std::nullopt, true);
    for (int point = 0; point < 10; ++point) {
        std::vector<double> p(std::size_t(obj.n_params), 0.0);
        for (double& v : p) v = rng.uniform(-2.0, 2.0);
        const auto adj = analytic_gradient(obj, p);
        for (int slot = 0; slot < obj.n_params; slot += 2) { // pair-exchange slots
            CHECK(shift_gradient(obj, p, slot, sym) ==
                  doctest::Approx(adj[std::size_t(slot)]).epsilon(1e-9).scale(1.0));
            CHECK(shift_gradient(obj, p, slot, opt) ==
                  doctest::Approx(adj[std::size_t(slot)]).epsilon(1e-9).scale(1.0));
        }
    }
    std::vector<double> p(std::size_t(obj.n_params), 0.3);
    // orbital-rotation slots have an unsupported generator spectrum
    CHECK_THROWS(shift_gradient(obj, p, 1, sym));
    // class mismatch is refused
    CHECK_THROWS(shift_gradient(obj, p, 0, make_shift_rule(RuleClass::two_term, kPi / 2)));
}

TEST_CASE("every one-parameter kind classifies into a rule class") {
    for (GateKind kind : all_gate_kinds()) {
        if (n_params(kind) != 1) continue;
        CAPTURE(kind_name(kind));
        const GeneratorReport rep = classify_generator(kind);
        const bool known = rep.rule_class == RuleClass::two_term ||
                           rep.rule_class == RuleClass::four_term ||
                           rep.rule_class == RuleClass::unsupported;
        CHECK(known);
        if (rep.rule_class != RuleClass::unsupported) CHECK(rep.scale_a == doctest::Approx(1.0));
    }
}

TEST_CASE("two-term rule on the RY slots of a decomposed circuit") {
    const CircuitObjective base = fabric_energy(2, 1, 13);
    Rng rng(93);
    std::vector<double> p0(std::size_t(base.n_params));
    for (double& v : p0) v = rng.uniform(-2.0, 2.0);
    auto [flat, values] = free_parameters(decompose_circuit(base.circuit), p0);
    CircuitObjective obj =
        energy_objective(std::move(flat), base.hamiltonian, base.reference, int(values.size()));
    const auto adj = analytic_gradient(obj, values);
    int checked = 0;
    for (std::size_t gi = 0, slot = 0; gi < obj.circuit.size(); ++gi) {
        for (const AngleExpr& a : obj.circuit[gi].angles) {
            if (a.is_constant()) continue;
            if (obj.circuit[gi].kind == GateKind::RY) {
                for (int rep = 0; rep < 5; ++rep) {
                    const double alpha = rng.uniform(0.2, 2.9);
                    const double got = shift_gradient(obj, values, int(slot),
                                                      make_shift_rule(RuleClass::two_term, alpha));
                    CHECK(got == doctest::Approx(adj[slot]).epsilon(1e-9).scale(1.0));
                }
                ++checked;
            }
            ++slot;
        }
    }
    CHECK(checked >= 4);
}

TEST_CASE("gate elision reproduces the plain rule") {
    const CircuitObjective obj = single_ry_z();
    const std::vector<double> p{0.7};
    const ShiftRule rule = make_shift_rule(RuleClass::two_term, kPi / 2);
    const double plain = shift_gradient(obj, p, 0, rule, false);
    const double elided = shift_gradient(obj, p, 0, rule, true);
    CHECK(std::abs(plain - elided) < 1e-12);
    CHECK(plain == doctest::Approx(-std::sin(0.7)).epsilon(1e-12));
    CHECK_THROWS(shift_gradient(obj, std::vector<double>{0.0}, 0, rule, true));

    // four-term elision on a pair-exchange slot
    const CircuitObjective fab = fabric_energy(2, 1, 17);
    std::vector<double> fp{0.9, -0.4};
    const ShiftRule sym = make_shift_rule(RuleClass::four_term, kPi / 2, kPi);
    CHECK(shift_gradient(fab, fp, 0, sym, true) ==
          doctest::Approx(shift_gradient(fab, fp, 0, sym, false)).epsilon(1e-11).scale(1.0));
}

TEST_CASE("shot-noise variance formulas") {
    const VarianceReport two =
        shot_noise_variance(make_shift_rule(RuleClass::two_term, kPi / 2), 1.0, 100);
    CHECK(two.sigma2 == doctest::Approx(0.01));
    CHECK(two.allocation[0] == doctest::Approx(50.0));

    const VarianceReport opt =
        shot_noise_variance(make_shift_rule(RuleClass::four_term, 0, std::nullopt, true), 1.0, 100);
    CHECK(opt.sigma2 == doctest::Approx(0.01)); // coincides with the optimal two-term rule

    const VarianceReport sym =
        shot_noise_variance(make_shift_rule(RuleClass::four_term, kPi / 2, kPi), 1.0, 100);
    const double d1 = 0.5, d2 = (std::sqrt(2.0) - 1) / 4;
    CHECK(sym.sigma2 == doctest::Approx(4 * (d1 + d2) * (d1 + d2) / 100.0));
    CHECK(sym.sigma2 > opt.sigma2);

    // generic-angle two-term rule: sigma^2 = V / (N sin^2 alpha)
    const double alpha = 0.73;
    const VarianceReport gen =
        shot_noise_variance(make_shift_rule(RuleClass::two_term, alpha), 2.0, 1000);
    CHECK(gen.sigma2 == doctest::Approx(2.0 / (1000 * std::sin(alpha) * std::sin(alpha))));
}

TEST_CASE("biased prefactor limits and Monte-Carlo mean squared error") {
    CHECK(biased_prefactor(2.0, 0.0, 100) == doctest::Approx(1.0));
    CHECK(biased_prefactor(0.0, 1.0, 100) == 0.0);
    // V / N = grad^2  ->  lambda* = 1/2
    CHECK(biased_prefactor(0.1, 1.0, 100.0) == doctest::Approx(0.5));

    const double theta = 0.9;
    const double grad = -std::sin(theta);
    const double V = 1.0;
    const std::uint64_t N = 100;
    const ShiftRule rule = make_shift_rule(RuleClass::two_term, kPi / 2);
    const double lambda = biased_prefactor(grad, V, double(N));
    auto f = [](double x) { return std::cos(x); };
    Rng rng(101);
    double mse_plain = 0.0, mse_biased = 0.0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        const double est = noisy_shift_estimate(f, theta, rule, V, N, rng);
        mse_plain += (est - grad) * (est - grad);
        mse_biased += (lambda * est - grad) * (lambda * est - grad);
    }
    CHECK(mse_biased < mse_plain);
}
