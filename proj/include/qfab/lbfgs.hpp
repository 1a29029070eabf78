#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace qfab {

enum class TerminalStatus { converged, max_epochs, stalled };
const char* terminal_status_name(TerminalStatus s);

struct OptimizerConfig {
    int history = 10;
    double g_tol = 1e-10;
    double f_tol = 0.0; // 0 disables the relative-change test
    int max_epochs = 10000;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    int max_line_search = 60;
};

struct TraceEpoch {
    int epoch;
    double value;
    double grad_inf_norm;
    std::uint64_t param_digest;
};

struct ConvergenceTrace {
    std::vector<TraceEpoch> epochs;
    TerminalStatus status = TerminalStatus::max_epochs;
};

struct LbfgsResult {
    std::vector<double> x;
    double f = 0.0;
    ConvergenceTrace trace;
    int n_evaluations = 0;
};

/// value-and-gradient callback
using ValueGrad = std::function<double(const std::vector<double>&, std::vector<double>&)>;

/// called with (epoch, iterate) after each recorded epoch
using EpochObserver = std::function<void(int, const std::vector<double>&)>;

std::uint64_t param_digest(const std::vector<double>& x);

/// Limited-memory BFGS with a strong-Wolfe line search. A failed line search
/// first retries from a steepest-descent reset; if that fails too the run
/// reports `stalled` rather than throwing.
LbfgsResult lbfgs_minimize(const ValueGrad& fn, std::vector<double> x0,
                           const OptimizerConfig& config,
                           const EpochObserver& observer = nullptr);

} // namespace qfab
