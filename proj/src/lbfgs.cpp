#include "qfab/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <stdexcept>

namespace qfab {

const char* terminal_status_name(TerminalStatus s) {
    switch (s) {
        case TerminalStatus::converged: return "converged";
        case TerminalStatus::max_epochs: return "max_epochs";
        case TerminalStatus::stalled: return "stalled";
    }
    return "?";
}

std::uint64_t param_digest(const std::vector<double>& x) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : x) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct LineSearchResult {
    bool ok = false;
    double alpha = 0.0;
    double f = 0.0;
    std::vector<double> x, g;
    int evals = 0;
};

/// Strong Wolfe line search (bracket + zoom with bisection safeguard).
LineSearchResult line_search(const ValueGrad& fn, const std::vector<double>& x0, double f0,
                             const std::vector<double>& g0, const std::vector<double>& d,
                             const OptimizerConfig& cfg) {
    LineSearchResult res;
    const double dg0 = dot(g0, d);
    if (dg0 >= 0.0) return res; // not a descent direction
    const double c1 = cfg.wolfe_c1, c2 = cfg.wolfe_c2;

    std::vector<double> x(x0.size()), g(x0.size());
    auto eval = [&](double a, double& f, double& dg) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = x0[i] + a * d[i];
        f = fn(x, g);
        dg = dot(g, d);
        ++res.evals;
    };

    double a_prev = 0.0, f_prev = f0;
    double a = 1.0;
    double a_lo = -1, a_hi = -1, f_lo = 0;
    bool bracketed = false;

    for (int it = 0; it < cfg.max_line_search && !bracketed; ++it) {
        double f, dgv;
        eval(a, f, dgv);
        if (f > f0 + c1 * a * dg0 || (it > 0 && f >= f_prev)) {
            a_lo = a_prev; f_lo = f_prev;
            a_hi = a;
            bracketed = true;
            break;
        }
        if (std::abs(dgv) <= -c2 * dg0) {
            res.ok = true;
            res.alpha = a;
            res.f = f;
            res.x = x;
            res.g = g;
            return res;
        }
        if (dgv >= 0.0) {
            a_lo = a; f_lo = f;
            a_hi = a_prev;
            bracketed = true;
            break;
        }
        a_prev = a; f_prev = f;
        a *= 2.0;
        if (a > 1e10) break;
    }
    if (!bracketed) return res;

    for (int it = 0; it < cfg.max_line_search; ++it) {
        const double trial = 0.5 * (a_lo + a_hi);
        double f, dgv;
        eval(trial, f, dgv);
        if (f > f0 + c1 * trial * dg0 || f >= f_lo) {
            a_hi = trial;
        } else {
            if (std::abs(dgv) <= -c2 * dg0) {
                res.ok = true;
                res.alpha = trial;
                res.f = f;
                res.x = x;
                res.g = g;
                return res;
            }
            if (dgv * (a_hi - a_lo) >= 0.0) a_hi = a_lo;
            a_lo = trial; f_lo = f;
        }
        if (std::abs(a_hi - a_lo) < 1e-16 * std::max(1.0, std::abs(a_lo))) break;
    }
    // No strong-Wolfe point located; accept a plain decrease if we found one.
    if (f_lo < f0 && a_lo > 0.0) {
        double f, dgv;
        eval(a_lo, f, dgv);
        res.ok = true;
        res.alpha = a_lo;
        res.f = f;
        res.x = x;
        res.g = g;
    }
    return res;
}

} // namespace

LbfgsResult lbfgs_minimize(const ValueGrad& fn, std::vector<double> x0,
                           const OptimizerConfig& cfg, const EpochObserver& observer) {
    const std::size_t n = x0.size();
    LbfgsResult res;
    std::vector<double> x = std::move(x0), g(n);
    double f = fn(x, g);
    ++res.n_evaluations;

    std::deque<std::pair<std::vector<double>, std::vector<double>>> hist; // (s, y)
    std::deque<double> rho;

    res.trace.epochs.push_back({0, f, inf_norm(g), param_digest(x)});
    if (observer) observer(0, x);
    res.trace.status = TerminalStatus::max_epochs;

    bool fresh_reset = true;
    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        if (inf_norm(g) < cfg.g_tol) {
            res.trace.status = TerminalStatus::converged;
            break;
        }
        // two-loop recursion
        std::vector<double> d = g;
        {
            std::vector<double> alpha(hist.size());
            for (std::size_t i = hist.size(); i-- > 0;) {
                alpha[i] = rho[i] * dot(hist[i].first, d);
                for (std::size_t k = 0; k < n; ++k) d[k] -= alpha[i] * hist[i].second[k];
            }
            if (!hist.empty()) {
                const auto& [s, y] = hist.back();
                const double gamma = dot(s, y) / dot(y, y);
                for (double& v : d) v *= gamma;
            }
            for (std::size_t i = 0; i < hist.size(); ++i) {
                const double beta = rho[i] * dot(hist[i].second, d);
                for (std::size_t k = 0; k < n; ++k) d[k] += (alpha[i] - beta) * hist[i].first[k];
            }
        }
        for (double& v : d) v = -v;

        LineSearchResult ls = line_search(fn, x, f, g, d, cfg);
        res.n_evaluations += ls.evals;
        if (!ls.ok) {
            if (!fresh_reset) {
                // retry once from steepest descent
                hist.clear();
                rho.clear();
                fresh_reset = true;
                std::vector<double> sd(n);
                for (std::size_t k = 0; k < n; ++k) sd[k] = -g[k];
                ls = line_search(fn, x, f, g, sd, cfg);
                res.n_evaluations += ls.evals;
            }
            if (!ls.ok) {
                res.trace.status = TerminalStatus::stalled;
                res.trace.epochs.push_back({epoch, f, inf_norm(g), param_digest(x)});
                break;
            }
        }

        std::vector<double> s(n), y(n);
        for (std::size_t k = 0; k < n; ++k) {
            s[k] = ls.x[k] - x[k];
            y[k] = ls.g[k] - g[k];
        }
        const double sy = dot(s, y);
        if (sy > 1e-14 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
            hist.emplace_back(std::move(s), std::move(y));
            rho.push_back(1.0 / sy);
            if (int(hist.size()) > cfg.history) {
                hist.pop_front();
                rho.pop_front();
            }
            fresh_reset = false;
        }

        const double f_prev = f;
        x = std::move(ls.x);
        g = std::move(ls.g);
        f = ls.f;
        res.trace.epochs.push_back({epoch, f, inf_norm(g), param_digest(x)});
        if (observer) observer(epoch, x);

        if (cfg.f_tol > 0.0 &&
            std::abs(f_prev - f) <= cfg.f_tol * std::max({1.0, std::abs(f), std::abs(f_prev)})) {
            res.trace.status = TerminalStatus::converged;
            break;
        }
        if (inf_norm(g) < cfg.g_tol) {
            res.trace.status = TerminalStatus::converged;
            break;
        }
    }
    res.x = std::move(x);
    res.f = f;
    return res;
}

} // namespace qfab
