#include "qfab/cli.hpp"

#include "qfab/gradients.hpp"
#include "qfab/hamiltonian.hpp"
#include "qfab/vqe.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace qfab::cli {

namespace {

using nlohmann::json;

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

IrrepKey parse_irrep(const std::string& s, int M) {
    IrrepKey key;
    key.M = M;
    if (std::sscanf(s.c_str(), "%d,%d,%d", &key.n_alpha, &key.n_beta, &key.S) != 3)
        throw std::invalid_argument("--irrep expects n_alpha,n_beta,S");
    if (!key.valid()) throw std::invalid_argument("--irrep is not a valid quantum number triple");
    return key;
}

/// Strict config loading: every key must be a registered long option of the
/// subcommand. The config is expanded into leading arguments, so explicit
/// command-line flags (parsed last with take-last policy) override it.
std::vector<std::string> merge_config_args(CLI::App* cmd, const std::vector<std::string>& args,
                                           const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file " + path);
    json cfg;
    try {
        cfg = json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse failure: ") + e.what());
    }
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    std::vector<std::string> merged = {args.front()};
    for (const auto& [key, value] : cfg.items()) {
        if (cmd->get_option_no_throw("--" + key) == nullptr)
            throw std::invalid_argument("unknown config key: " + key);
        if (key == "config") continue;
        merged.push_back("--" + key);
        merged.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    merged.insert(merged.end(), args.begin() + 1, args.end());
    return merged;
}

/// Value of "--config" / "--config=..." in a raw argument list, if any.
std::string find_config_arg(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return {};
}

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--out", c.out, "output path (default: stdout)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

// ---------------------------------------------------------------- irreps
int run_irreps(int M, const CommonOpts& c, bool exceptions_only) {
    const auto irreps = enumerate_irreps(M);
    json rows = json::array();
    std::ostringstream csv;
    csv << "M,n_alpha,n_beta,S,dimension,universal_for_Q\n";
    for (const auto& [key, dim] : irreps) {
        const EdgeCaseReport rep = classify_edge_case(key);
        if (exceptions_only && rep.universal_for_Q_fabric) continue;
        csv << key.M << ',' << key.n_alpha << ',' << key.n_beta << ',' << key.S << ',' << dim
            << ',' << (rep.universal_for_Q_fabric ? 1 : 0) << '\n';
        rows.push_back({{"M", key.M},
                        {"n_alpha", key.n_alpha},
                        {"n_beta", key.n_beta},
                        {"S", key.S},
                        {"dimension", dim},
                        {"universal_for_Q", rep.universal_for_Q_fabric}});
    }
    write_text(c.out, c.format == "json" ? rows.dump(2) + "\n" : csv.str());
    return 0;
}

// ---------------------------------------------------------------- gates
json decomposition_json(const Decomposition& d) {
    json steps = json::array();
    for (const auto& s : d.steps) {
        json angles = json::array();
        for (const AngleExpr& a : s.angles)
            angles.push_back({{"scale", a.scale}, {"offset", a.offset}, {"param", a.param}});
        steps.push_back({{"kind", kind_name(s.kind)}, {"wires", s.wires}, {"angles", angles}});
    }
    return {{"variant", d.variant},
            {"depth", d.depth()},
            {"two_qubit_count", d.two_qubit_count()},
            {"one_qubit_count", d.one_qubit_count()},
            {"steps", steps}};
}

int run_gates(const std::string& kind_name_arg, double theta, const CommonOpts& c) {
    json out = json::array();
    for (GateKind kind : all_gate_kinds()) {
        if (!kind_name_arg.empty() && kind_name_arg != kind_name(kind)) continue;
        json entry = {{"name", kind_name(kind)},
                      {"arity", arity(kind)},
                      {"n_params", n_params(kind)}};
        std::vector<double> params(std::size_t(n_params(kind)), theta);
        const GateMatrix m = reference_matrix(kind, params);
        json matrix = json::array();
        for (int r = 0; r < m.dim(); ++r) {
            json row = json::array();
            for (int col = 0; col < m.dim(); ++col) row.push_back(m.at(r, col));
            matrix.push_back(row);
        }
        entry["sample_params"] = params;
        entry["matrix"] = matrix;
        if (n_params(kind) == 1) {
            const GeneratorReport rep = classify_generator(kind);
            entry["shift_rule"] = rule_class_name(rep.rule_class);
            entry["generator_spectrum"] = rep.eigenvalues;
        }
        json ds = json::array();
        for (const Decomposition& d : all_decompositions(kind)) ds.push_back(decomposition_json(d));
        entry["decompositions"] = ds;
        out.push_back(entry);
    }
    if (out.empty()) throw std::invalid_argument("unknown gate kind: " + kind_name_arg);
    write_text(c.out, out.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- vqe/haar helpers
struct FabricOpts {
    std::string fabric = "Q";
    int layers = 1;
    std::string depths; // comma list overrides layers with a sweep
    std::string pi = "identity";
    std::string order = "ipo";
    std::string strategy = "A";
};

void add_fabric(CLI::App* cmd, FabricOpts& f) {
    cmd->add_option("--fabric", f.fabric, "fabric kind (Q, F, OR_only, PX_only)");
    cmd->add_option("--layers", f.layers, "number of tessellation layers");
    cmd->add_option("--depths", f.depths, "comma-separated layer counts (sweep)");
    cmd->add_option("--pi", f.pi, "fixed gate per element: identity, OR_pi, OFSWAP");
    cmd->add_option("--order", f.order, "element order, permutation of 'ipo'");
    cmd->add_option("--strategy", f.strategy, "initialization: A, B or random");
}

FabricSpec make_spec(const FabricOpts& f, int M, int layers) {
    FabricSpec spec;
    spec.kind = fabric_kind_from_name(f.fabric);
    if (spec.kind != FabricKind::Q && spec.kind != FabricKind::F &&
        spec.kind != FabricKind::OR_only && spec.kind != FabricKind::PX_only)
        throw std::invalid_argument("this command drives fermionic fabrics only "
                                    "(Q, F, OR_only, PX_only)");
    spec.M = M;
    spec.n_layers = layers;
    spec.pi_gate = pi_gate_from_name(f.pi);
    spec.gate_order = gate_order_from_string(f.order);
    return spec;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

struct HamiltonianOpts {
    std::string model = "hubbard_chain";
    std::string fcidump;
    double t = 1.0, U = 4.0, delta = 1.0, g = 0.5;
    std::uint64_t model_seed = 7;
};

void add_hamiltonian(CLI::App* cmd, HamiltonianOpts& h) {
    cmd->add_option("--model", h.model, "hubbard_chain, pairing or random_symmetric");
    cmd->add_option("--fcidump", h.fcidump, "FCIDUMP file (overrides --model)");
    cmd->add_option("--t", h.t, "hopping");
    cmd->add_option("--U", h.U, "on-site repulsion");
    cmd->add_option("--delta", h.delta, "level spacing");
    cmd->add_option("--g", h.g, "pair coupling");
    cmd->add_option("--model-seed", h.model_seed, "seed for random_symmetric");
}

PauliSum build_hamiltonian(const HamiltonianOpts& h, int& M) {
    if (!h.fcidump.empty()) {
        const IntegralSet ints = read_fcidump(h.fcidump);
        M = ints.M;
        return from_integrals(ints);
    }
    ModelParams p;
    p.t = h.t;
    p.U = h.U;
    p.delta = h.delta;
    p.g = h.g;
    return model_hamiltonian(h.model, M, p, h.model_seed);
}

int run_vqe(int M, const std::string& irrep_str, const FabricOpts& f, const HamiltonianOpts& h,
            const CommonOpts& c, const OptimizerConfig& opt, int restarts, int jobs,
            const std::string& trace_path, const std::string& spectrum_path,
            const std::string& spectrum_order) {
    int Meff = M;
    const PauliSum ham = build_hamiltonian(h, Meff);
    const IrrepKey key = parse_irrep(irrep_str, Meff);
    const FciResult fci = fci_ground_state(ham, key);
    const StateVector ref = reference_state(Meff, key.n_alpha, key.n_beta);

    if (!f.depths.empty()) {
        SweepProblem problem;
        problem.hamiltonian = ham;
        problem.irrep = key;
        problem.fabric_base = make_spec(f, Meff, 1);
        problem.reference_energy = fci.energy;
        const std::vector<int> depths = parse_int_list(f.depths);
        std::vector<InitStrategy> strategies;
        if (f.strategy == "A" || f.strategy == "both") strategies.push_back(InitStrategy::A);
        if (f.strategy == "B" || f.strategy == "both") strategies.push_back(InitStrategy::B);
        if (strategies.empty())
            throw std::invalid_argument("--depths sweeps need --strategy A, B or both");
        const std::uint64_t seeds[1] = {c.seed};
        const auto rows = depth_sweep(problem, depths, strategies, seeds, opt, restarts, jobs);
        std::ostringstream csv;
        csv << "depth,n_params,strategy,seed,energy,error,epochs,status\n";
        json jrows = json::array();
        for (const SweepRow& r : rows) {
            const char* strat = r.strategy == InitStrategy::A ? "A" : "B";
            csv << r.depth << ',' << r.n_params << ',' << strat << ',' << r.seed << ','
                << fmt(r.terminal_value) << ',' << fmt(r.terminal_error) << ',' << r.epochs << ','
                << terminal_status_name(r.status) << '\n';
            jrows.push_back({{"depth", r.depth},
                             {"n_params", r.n_params},
                             {"strategy", strat},
                             {"seed", r.seed},
                             {"energy", r.terminal_value},
                             {"error", r.terminal_error},
                             {"epochs", r.epochs},
                             {"status", terminal_status_name(r.status)}});
        }
        write_text(c.out, c.format == "json" ? jrows.dump(2) + "\n" : csv.str());
        return 0;
    }

    FabricSpec spec = make_spec(f, Meff, f.layers);
    ParamVector init;
    if (f.strategy == "A")
        init = initialize(spec, InitStrategy::A);
    else if (f.strategy == "B")
        init = initialize(spec, InitStrategy::B);
    else if (f.strategy == "random")
        init = random_params(spec, c.seed);
    else
        throw std::invalid_argument("--strategy must be A, B or random");

    const Objective obj = energy_vqe(spec, ham, ref);
    MinimizeResult res = minimize(obj, init, opt);
    for (int r = 1; r <= restarts; ++r) {
        ParamVector perturbed = init;
        Rng rng(Rng::derive(c.seed, std::uint64_t(r)));
        for (double& v : perturbed.values) v += 0.1 * rng.gaussian();
        MinimizeResult alt = minimize(obj, perturbed, opt);
        if (alt.value < res.value) res = std::move(alt);
    }

    if (!trace_path.empty()) {
        if (trace_path.size() > 5 && trace_path.substr(trace_path.size() - 5) == ".json") {
            json rows = json::array();
            for (const TraceEpoch& e : res.trace.epochs)
                rows.push_back({{"epoch", e.epoch},
                                {"value", e.value},
                                {"grad_inf_norm", e.grad_inf_norm},
                                {"param_digest", e.param_digest}});
            write_text(trace_path, rows.dump(2) + "\n");
        } else {
            std::ostringstream csv;
            csv << "epoch,value,grad_inf_norm,param_digest\n";
            for (const TraceEpoch& e : res.trace.epochs)
                csv << e.epoch << ',' << fmt(e.value) << ',' << fmt(e.grad_inf_norm) << ','
                    << std::hex << e.param_digest << std::dec << '\n';
            write_text(trace_path, csv.str());
        }
    }
    if (!spectrum_path.empty()) {
        const CircuitObjective cobj = obj.compile();
        const StateVector out_state = cobj.output_state(res.params.values);
        const SpectrumOrder ord = spectrum_order == "fci_consistent"
                                      ? SpectrumOrder::fci_consistent
                                      : SpectrumOrder::sorted_desc;
        const auto spec_rows = amplitude_spectrum(
            out_state, ord, ord == SpectrumOrder::fci_consistent ? &fci.state : nullptr);
        std::ostringstream csv;
        csv << "rank,basis_index,probability,seniority\n";
        for (std::size_t i = 0; i < spec_rows.size(); ++i)
            csv << i << ',' << spec_rows[i].index << ',' << fmt(spec_rows[i].probability) << ','
                << spec_rows[i].seniority << '\n';
        write_text(spectrum_path, csv.str());
    }

    json summary = {
        {"command", "vqe"},
        {"M", Meff},
        {"irrep", {{"n_alpha", key.n_alpha}, {"n_beta", key.n_beta}, {"S", key.S}}},
        {"hamiltonian", h.fcidump.empty() ? h.model : "fcidump:" + h.fcidump},
        {"fabric",
         {{"kind", fabric_kind_name(spec.kind)},
          {"layers", spec.n_layers},
          {"pi", pi_gate_name(spec.pi_gate)},
          {"order", gate_order_to_string(spec.gate_order)}}},
        {"strategy", f.strategy},
        {"seed", c.seed},
        {"n_params", fabric_param_count(spec)},
        {"energy", res.value},
        {"e_fci", fci.energy},
        {"error", res.value - fci.energy},
        {"epochs", res.trace.epochs.empty() ? 0 : res.trace.epochs.back().epoch},
        {"evaluations", res.n_evaluations},
        {"status", terminal_status_name(res.trace.status)},
    };
    if (c.format == "json") {
        write_text(c.out, summary.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "key,value\n";
        for (const auto& [k, v] : summary.items())
            csv << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        write_text(c.out, csv.str());
    }
    return 0;
}

int run_haar(int M, int na, int nb, int S, const FabricOpts& f, const CommonOpts& c,
             const OptimizerConfig& opt, int restarts, int jobs) {
    const IrrepKey key{M, na, nb, S};
    if (!key.valid()) throw std::invalid_argument("invalid irrep");
    const long dim = irrep_dimension(key);
    std::vector<int> layer_list =
        f.depths.empty() ? std::vector<int>{f.layers} : parse_int_list(f.depths);

    std::vector<OverlapRun> runs(layer_list.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t i = 0; i < std::int64_t(layer_list.size()); ++i) {
        const FabricSpec spec = make_spec(f, M, layer_list[std::size_t(i)]);
        runs[std::size_t(i)] = haar_overlap_run(key, spec, c.seed, opt, restarts);
    }

    std::ostringstream csv;
    csv << "layers,n_params,irrep_dim,infidelity,epochs,status\n";
    json jrows = json::array();
    for (std::size_t i = 0; i < layer_list.size(); ++i) {
        const FabricSpec spec = make_spec(f, M, layer_list[i]);
        const OverlapRun& r = runs[i];
        csv << layer_list[i] << ',' << fabric_param_count(spec) << ',' << dim << ','
            << fmt(r.infidelity) << ',' << r.epochs << ',' << terminal_status_name(r.status)
            << '\n';
        jrows.push_back({{"layers", layer_list[i]},
                         {"n_params", fabric_param_count(spec)},
                         {"irrep_dim", dim},
                         {"infidelity", r.infidelity},
                         {"epochs", r.epochs},
                         {"status", terminal_status_name(r.status)}});
    }
    write_text(c.out, c.format == "json" ? jrows.dump(2) + "\n" : csv.str());
    return 0;
}

int run_gradcheck(int M, const std::string& irrep_str, const FabricOpts& f,
                  const HamiltonianOpts& h, const CommonOpts& c) {
    int Meff = M;
    const PauliSum ham = build_hamiltonian(h, Meff);
    const IrrepKey key = parse_irrep(irrep_str, Meff);
    FabricSpec spec = make_spec(f, Meff, f.layers);
    const StateVector ref = reference_state(Meff, key.n_alpha, key.n_beta);
    const Objective obj = energy_vqe(spec, ham, ref);
    const CircuitObjective cobj = obj.compile();
    const ParamVector params = random_params(spec, c.seed);

    const std::vector<double> adj = analytic_gradient(cobj, params.values);
    const ShiftRule four_sym =
        make_shift_rule(RuleClass::four_term, std::numbers::pi / 2, std::numbers::pi);
    const ShiftRule four_opt = make_shift_rule(RuleClass::four_term, 0.0, std::nullopt, true);
    const ShiftRule two_std = make_shift_rule(RuleClass::two_term, std::numbers::pi / 2);

    std::ostringstream csv;
    csv << "slot,kind,rule,adjoint,finite_diff,fd_err,shift_sym,shift_opt,shift_err\n";
    for (int slot = 0; slot < cobj.n_params; ++slot) {
        GateKind kind = GateKind::RY;
        for (const auto& g : cobj.circuit)
            for (const AngleExpr& a : g.angles)
                if (!a.is_constant() && a.param == slot) kind = g.kind;
        std::vector<double> p(params.values);
        const double step = 1e-5;
        p[std::size_t(slot)] += step;
        const double fp = cobj.value(p);
        p[std::size_t(slot)] -= 2 * step;
        const double fm = cobj.value(p);
        const double fd = (fp - fm) / (2 * step);

        const GeneratorReport rep = classify_generator(kind);
        const double a = adj[std::size_t(slot)];
        double shift_sym = a, shift_opt = a;
        if (rep.rule_class == RuleClass::four_term) {
            shift_sym = shift_gradient(cobj, params.values, slot, four_sym);
            shift_opt = shift_gradient(cobj, params.values, slot, four_opt);
        } else if (rep.rule_class == RuleClass::two_term) {
            shift_sym = shift_gradient(cobj, params.values, slot, two_std);
            shift_opt = shift_sym;
        }
        const double shift_err = std::max(std::abs(shift_sym - a), std::abs(shift_opt - a));
        csv << slot << ',' << kind_name(kind) << ',' << rule_class_name(rep.rule_class) << ','
            << fmt(a) << ',' << fmt(fd) << ',' << fmt(std::abs(fd - a)) << ',' << fmt(shift_sym)
            << ',' << fmt(shift_opt) << ',' << fmt(shift_err) << '\n';
    }
    write_text(c.out, csv.str());
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"quantum-number-preserving gate fabric simulator"};
    app.require_subcommand(1);

    // ---- irreps / edgecases
    int irreps_M = 4;
    CommonOpts irreps_common;
    CLI::App* cmd_irreps = app.add_subcommand("irreps", "irrep table with dimensions");
    cmd_irreps->add_option("--M", irreps_M, "spatial orbital count")->required();
    add_common(cmd_irreps, irreps_common);

    int edge_M = 4;
    CommonOpts edge_common;
    CLI::App* cmd_edge = app.add_subcommand("edgecases", "non-universal irreps for the Q fabric");
    cmd_edge->add_option("--M", edge_M, "spatial orbital count")->required();
    add_common(cmd_edge, edge_common);

    // ---- gates
    std::string gates_kind;
    double gates_theta = 0.3;
    CommonOpts gates_common;
    CLI::App* cmd_gates = app.add_subcommand("gates", "gate catalog dump (JSON)");
    cmd_gates->add_option("--kind", gates_kind, "restrict to one gate kind");
    cmd_gates->add_option("--theta", gates_theta, "sample angle for the matrices");
    add_common(cmd_gates, gates_common);

    // ---- vqe
    int vqe_M = 2;
    std::string vqe_irrep = "1,1,0";
    FabricOpts vqe_fabric;
    HamiltonianOpts vqe_h;
    CommonOpts vqe_common;
    vqe_common.format = "json";
    OptimizerConfig vqe_opt;
    int vqe_restarts = 0, vqe_jobs = 1;
    std::string vqe_trace, vqe_spectrum, vqe_spectrum_order = "sorted_desc", vqe_config;
    CLI::App* cmd_vqe = app.add_subcommand("vqe", "ground-state energy optimization");
    cmd_vqe->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_vqe->add_option("--M", vqe_M, "spatial orbital count");
    cmd_vqe->add_option("--irrep", vqe_irrep, "n_alpha,n_beta,S");
    add_fabric(cmd_vqe, vqe_fabric);
    add_hamiltonian(cmd_vqe, vqe_h);
    add_common(cmd_vqe, vqe_common);
    cmd_vqe->add_option("--max-epochs", vqe_opt.max_epochs, "optimizer epoch limit");
    cmd_vqe->add_option("--g-tol", vqe_opt.g_tol, "gradient norm tolerance");
    cmd_vqe->add_option("--f-tol", vqe_opt.f_tol, "relative objective change tolerance");
    cmd_vqe->add_option("--restarts", vqe_restarts, "extra perturbed starts");
    cmd_vqe->add_option("--jobs", vqe_jobs, "parallel independent runs");
    cmd_vqe->add_option("--trace", vqe_trace, "write per-epoch trace CSV here");
    cmd_vqe->add_option("--spectrum", vqe_spectrum, "write amplitude spectrum CSV here");
    cmd_vqe->add_option("--spectrum-order", vqe_spectrum_order, "sorted_desc or fci_consistent");
    cmd_vqe->add_option("--config", vqe_config, "JSON config file (strict keys)");

    // ---- haar
    int haar_M = 4, haar_na = 2, haar_nb = 2, haar_S = 0;
    FabricOpts haar_fabric;
    CommonOpts haar_common;
    OptimizerConfig haar_opt;
    haar_opt.max_epochs = 2000;
    int haar_restarts = 0, haar_jobs = 1;
    std::string haar_config;
    CLI::App* cmd_haar = app.add_subcommand("haar", "random-state overlap protocol");
    cmd_haar->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd_haar->add_option("--M", haar_M, "spatial orbital count");
    cmd_haar->add_option("--na", haar_na, "n_alpha");
    cmd_haar->add_option("--nb", haar_nb, "n_beta");
    cmd_haar->add_option("--S", haar_S, "spin label");
    add_fabric(cmd_haar, haar_fabric);
    add_common(cmd_haar, haar_common);
    cmd_haar->add_option("--max-epochs", haar_opt.max_epochs, "optimizer epoch limit");
    cmd_haar->add_option("--g-tol", haar_opt.g_tol, "gradient norm tolerance");
    cmd_haar->add_option("--restarts", haar_restarts, "extra random starts");
    cmd_haar->add_option("--jobs", haar_jobs, "parallel independent runs");
    cmd_haar->add_option("--config", haar_config, "JSON config file (strict keys)");

    // ---- gradcheck
    int gc_M = 3;
    std::string gc_irrep = "2,1,1";
    FabricOpts gc_fabric;
    gc_fabric.layers = 2;
    gc_fabric.strategy = "random";
    HamiltonianOpts gc_h;
    CommonOpts gc_common;
    CLI::App* cmd_gc = app.add_subcommand("gradcheck", "per-slot gradient comparison table");
    cmd_gc->add_option("--M", gc_M, "spatial orbital count");
    cmd_gc->add_option("--irrep", gc_irrep, "n_alpha,n_beta,S");
    add_fabric(cmd_gc, gc_fabric);
    add_hamiltonian(cmd_gc, gc_h);
    add_common(cmd_gc, gc_common);

    try {
        std::vector<std::string> effective = args;
        if (!args.empty()) {
            const std::string config_path = find_config_arg(args);
            if (!config_path.empty()) {
                if (args.front() == "vqe")
                    effective = merge_config_args(cmd_vqe, args, config_path);
                else if (args.front() == "haar")
                    effective = merge_config_args(cmd_haar, args, config_path);
                else
                    throw std::invalid_argument("--config is supported by vqe and haar only");
            }
        }
        std::vector<std::string> rev(effective.rbegin(), effective.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*cmd_irreps) return run_irreps(irreps_M, irreps_common, false);
        if (*cmd_edge) return run_irreps(edge_M, edge_common, true);
        if (*cmd_gates) return run_gates(gates_kind, gates_theta, gates_common);
        if (*cmd_vqe)
            return run_vqe(vqe_M, vqe_irrep, vqe_fabric, vqe_h, vqe_common, vqe_opt, vqe_restarts,
                           vqe_jobs, vqe_trace, vqe_spectrum, vqe_spectrum_order);
        if (*cmd_haar)
            return run_haar(haar_M, haar_na, haar_nb, haar_S, haar_fabric, haar_common, haar_opt,
                            haar_restarts, haar_jobs);
        if (*cmd_gc) return run_gradcheck(gc_M, gc_irrep, gc_fabric, gc_h, gc_common);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace qfab::cli
