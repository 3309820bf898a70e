#include "modisc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace modisc {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config: key '" + key + "' needs an integer, got '" + value + "'");
    }
}

}  // namespace

void RunConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
    if (problem != "poisson_sine" && problem != "disc_jump" && problem != "custom")
        fail("'problem' must be poisson_sine, disc_jump or custom");
    if (coefficient != "constant" && coefficient != "disc_jump" &&
        coefficient != "disc_jump_smoothed" && coefficient != "checkerboard")
        fail("'coefficient' must be constant, disc_jump, disc_jump_smoothed or checkerboard");
    if (f != "one" && f != "sine") fail("'f' must be one or sine");
    if (!(kappa > 0.0)) fail("'kappa' must be positive");
    if (!(k_in > 0.0) || !(k_out > 0.0)) fail("'k_in'/'k_out' must be positive");
    if (!(radius > 0.0)) fail("'radius' must be positive");
    if (cells < 1) fail("'cells' must be >= 1");
    if (!(k1 > 0.0) || !(k2 > 0.0)) fail("'k1'/'k2' must be positive");
    if (n0 < 1) fail("'n0' must be >= 1");
    if (eps0 < 0.0) fail("'eps0' must be nonnegative");
    if (!(delta > 0.0)) fail("'delta' must be positive");
    if (!(P > 2.0)) fail("'P' must exceed 2");
    if (policy != "default" && policy != "scan") fail("'policy' must be default or scan");
    if (!(C_L >= 1.0)) fail("'C_L' must be >= 1");
    if (quad_order < 1) fail("'quad_order' must be >= 1");
    if (integration_n < 1) fail("'integration_n' must be >= 1");
    if (!(q_report >= 1.0)) fail("'q_report' must be >= 1");
    if (flux_iters < 0) fail("'flux_iters' must be >= 0");
    if (budget < 1) fail("'budget' must be >= 1");
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::map<std::string, std::function<void(const std::string&)>> setters;
    setters["problem"] = [&](const std::string& v) { cfg.problem = v; };
    setters["coefficient"] = [&](const std::string& v) { cfg.coefficient = v; };
    setters["f"] = [&](const std::string& v) { cfg.f = v; };
    setters["kappa"] = [&](const std::string& v) { cfg.kappa = to_double("kappa", v); };
    setters["k_in"] = [&](const std::string& v) { cfg.k_in = to_double("k_in", v); };
    setters["k_out"] = [&](const std::string& v) { cfg.k_out = to_double("k_out", v); };
    setters["radius"] = [&](const std::string& v) { cfg.radius = to_double("radius", v); };
    setters["center_x"] = [&](const std::string& v) { cfg.center_x = to_double("center_x", v); };
    setters["center_y"] = [&](const std::string& v) { cfg.center_y = to_double("center_y", v); };
    setters["cells"] = [&](const std::string& v) { cfg.cells = to_int("cells", v); };
    setters["k1"] = [&](const std::string& v) { cfg.k1 = to_double("k1", v); };
    setters["k2"] = [&](const std::string& v) { cfg.k2 = to_double("k2", v); };
    setters["n0"] = [&](const std::string& v) { cfg.n0 = to_int("n0", v); };
    setters["eps0"] = [&](const std::string& v) { cfg.eps0 = to_double("eps0", v); };
    setters["delta"] = [&](const std::string& v) {
        cfg.delta = (v == "inf") ? std::numeric_limits<double>::infinity()
                                 : to_double("delta", v);
    };
    setters["P"] = [&](const std::string& v) { cfg.P = to_double("P", v); };
    setters["policy"] = [&](const std::string& v) { cfg.policy = v; };
    setters["C_L"] = [&](const std::string& v) { cfg.C_L = to_double("C_L", v); };
    setters["quad_order"] = [&](const std::string& v) { cfg.quad_order = to_int("quad_order", v); };
    setters["integration_n"] = [&](const std::string& v) {
        cfg.integration_n = to_int("integration_n", v);
    };
    setters["q_report"] = [&](const std::string& v) { cfg.q_report = to_double("q_report", v); };
    setters["flux_iters"] = [&](const std::string& v) { cfg.flux_iters = to_int("flux_iters", v); };
    setters["budget"] = [&](const std::string& v) { cfg.budget = to_int("budget", v); };
    setters["out"] = [&](const std::string& v) { cfg.out = v; };
    setters["solution_out"] = [&](const std::string& v) { cfg.solution_out = v; };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("config: unknown key '" + key + "'");
        it->second(value);
    }
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(in);
}

namespace {

ScalarField make_load(const std::string& name) {
    if (name == "sine") {
        return [](const Vec2& x) {
            return 2.0 * std::numbers::pi * std::numbers::pi * std::sin(std::numbers::pi * x.x) *
                   std::sin(std::numbers::pi * x.y);
        };
    }
    return [](const Vec2&) { return 1.0; };
}

}  // namespace

Problem make_problem(const RunConfig& config) {
    config.validate();
    Problem problem;
    problem.name = config.problem;
    problem.f = make_load(config.f);

    if (config.problem == "poisson_sine") {
        problem.a0 = make_constant_coefficient(1.0);
        problem.simplify = [](double) { return make_constant_coefficient(1.0); };
        problem.f = make_load("sine");
        problem.eps0 = 0.0;
        problem.exact_gradient = [](const Vec2& x) {
            const double pi = std::numbers::pi;
            return Vec2{pi * std::cos(pi * x.x) * std::sin(pi * x.y),
                        pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
        };
        return problem;
    }

    if (config.problem == "disc_jump") {
        JumpDiscSpec spec;
        spec.center = {config.center_x, config.center_y};
        spec.radius = config.radius;
        spec.k_in = config.k_in;
        spec.k_out = config.k_out;
        spec.eps = 0.0;
        problem.a0 = make_disc_coefficient(spec);
        problem.simplify = [spec](double eps) {
            if (eps <= 0.0) return make_disc_coefficient(spec);
            JumpDiscSpec s = spec;
            s.eps = eps;
            return smooth_disc_coefficient(s);
        };
        problem.eps0 = config.eps0;
        return problem;
    }

    // custom: coefficient chosen directly, model kept exact
    if (config.coefficient == "constant") {
        problem.a0 = make_constant_coefficient(config.kappa);
    } else if (config.coefficient == "checkerboard") {
        problem.a0 = make_checkerboard_coefficient({config.cells, config.k1, config.k2});
    } else {
        JumpDiscSpec spec;
        spec.center = {config.center_x, config.center_y};
        spec.radius = config.radius;
        spec.k_in = config.k_in;
        spec.k_out = config.k_out;
        spec.eps = config.coefficient == "disc_jump_smoothed" ? config.eps0 : 0.0;
        problem.a0 = spec.eps > 0.0 ? smooth_disc_coefficient(spec) : make_disc_coefficient(spec);
    }
    const CoefficientField a0 = problem.a0;
    problem.simplify = [a0](double) { return a0; };
    problem.eps0 = 0.0;
    return problem;
}

StrategySettings make_strategy_settings(const RunConfig& config) {
    StrategySettings s;
    s.delta = config.delta;
    s.budget = config.budget;
    s.flux_iters = config.flux_iters;
    s.estimator.P = config.P;
    s.estimator.C_L = config.C_L;
    s.estimator.policy =
        config.policy == "scan" ? ExponentPolicy::Scan : ExponentPolicy::Default;
    s.estimator.quad_order = config.quad_order;
    s.estimator.integration_n = config.integration_n;
    s.estimator.q_report = config.q_report;
    return s;
}

int run_solve(const RunConfig& config, std::ostream& csv_out, std::ostream& log) {
    const Problem problem = make_problem(config);
    const StrategySettings settings = make_strategy_settings(config);
    const AdaptiveState state = run_strategy(problem, config.n0, settings);
    if (!config.solution_out.empty()) write_fe_function_file(state.last_solution, config.solution_out);

    csv_out << error_report_csv_header() << '\n';
    for (const auto& report : state.history) csv_out << error_report_csv_row(report) << '\n';

    const ErrorReport& last = state.history.back();
    csv_out << "# summary: problem=" << problem.name << " steps=" << state.history.size()
            << " converged=" << (state.converged ? 1 : 0) << " total_combined=";
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", last.total_combined);
        csv_out << buf;
    }
    csv_out << " delta=";
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", settings.delta);
        csv_out << buf;
    }
    csv_out << '\n'
            << "# note: regularity constants assume a C1 boundary and are applied on the "
               "polygonal square\n";

    if (!state.converged) {
        log << "budget exhausted after " << state.history.size() << " steps\n";
        return 2;
    }
    log << "converged in " << state.history.size() << " steps\n";
    return 0;
}

int run_constants(int d, double p_min, double p_max, int steps, double P, std::ostream& out) {
    if (d != 2 && d != 3) throw std::invalid_argument("run_constants: d must be 2 or 3");
    if (!(p_min > 1.0) || !(p_max > p_min))
        throw std::invalid_argument("run_constants: need 1 < p_min < p_max");
    if (steps < 2) throw std::invalid_argument("run_constants: need steps >= 2");
    if (!(P > 2.0)) throw std::invalid_argument("run_constants: need P > 2");

    const double C_P = laplace_constant_bound(std::max(P, 2.0), d, 1.0);
    out << "# modisc constants v1\n";
    out << "# C_2 = 1 exactly; p* uses the bound C_P <= C_L P^{d+1} with C_L = 1\n";
    out << "p,C_d,C1_d_p,eta_p_P,tau,p_star_tau_P\n";
    char buf[256];
    const double Cd = czygmund_C(d);
    for (int i = 0; i < steps; ++i) {
        const double frac = static_cast<double>(i) / (steps - 1);
        const double p = p_min + frac * (p_max - p_min);
        const double tau = frac;
        const double eta_v = (p >= 2.0 && p <= P) ? eta(p, P) : std::nan("");
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", p, Cd,
                      czygmund_C1(d, p), eta_v, tau, p_star(tau, P, C_P));
        out << buf << '\n';
    }
    return 0;
}

int run_scaling(const ScalingOptions& options, std::ostream& out) {
    if (options.eps_pow_min > options.eps_pow_max)
        throw std::invalid_argument("run_scaling: bad eps range");
    out << "# modisc scaling v1\n";
    out << "p,p_pp,eps,B_norm\n";
    const TriangleMesh mesh = build_structured_square(options.integration_n);
    char buf[160];
    for (double p : options.p_values) {
        const ExponentPair ep(p);
        for (int k = options.eps_pow_min; k <= options.eps_pow_max; ++k) {
            const double eps = std::pow(2.0, -k);
            JumpDiscSpec sharp = options.geometry;
            sharp.eps = 0.0;
            JumpDiscSpec smooth = options.geometry;
            smooth.eps = eps;
            const ModelPair model =
                make_model_pair(make_disc_coefficient(sharp), smooth_disc_coefficient(smooth));
            const SubdivisionHint hint = model_pair_hint(model, eps, options.resolve_factor);
            const MatrixField b = make_B_eps(model.exact, model.simplified);
            const double norm =
                field_norm(b, ep.p_pp, p, mesh, options.quad_order, hint);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", p, ep.p_pp, eps, norm);
            out << buf << '\n';
        }
    }
    return 0;
}

}  // namespace modisc
