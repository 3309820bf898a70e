#ifndef MODISC_CONFIG_HPP
#define MODISC_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "modisc/strategy.hpp"

namespace modisc {

/// Solve-run configuration, read from a "key = value" file ('#' comments).
/// Unknown keys are rejected by name.
struct RunConfig {
    std::string problem = "disc_jump";   // poisson_sine | disc_jump | custom
    std::string coefficient = "disc_jump";  // constant | disc_jump | disc_jump_smoothed | checkerboard
    std::string f = "one";               // one | sine
    double kappa = 1.0;                  // constant coefficient value
    double k_in = 1.02;
    double k_out = 1.0;
    double radius = 0.3;
    double center_x = 0.5;
    double center_y = 0.5;
    int cells = 2;                       // checkerboard cells per side
    double k1 = 1.0, k2 = 1.0;           // checkerboard values

    int n0 = 8;
    double eps0 = 0.25;
    double delta = 0.1;
    double P = 4.0;
    std::string policy = "default";      // default | scan
    double C_L = 1.0;
    int quad_order = 5;
    int integration_n = 64;
    double q_report = 2.0;
    int flux_iters = 5;
    int budget = 20;
    std::string out;                     // CSV path; empty = stdout
    std::string solution_out;            // optional "x y value" dump of the final solution

    void validate() const;  // throws std::invalid_argument naming the field
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

/// Instantiates the configured benchmark problem.
Problem make_problem(const RunConfig& config);

StrategySettings make_strategy_settings(const RunConfig& config);

/// Executes the adaptive loop and writes the CSV history plus a '#' summary
/// block to csv_out. Returns 0 on convergence, 2 on budget exhaustion.
int run_solve(const RunConfig& config, std::ostream& csv_out, std::ostream& log);

/// CSV table p, C(d), C1(d,p), eta(p,P), tau, p*(tau,P): the p column sweeps
/// [p_min, p_max] and the tau column sweeps [0, 1] over the same rows.
int run_constants(int d, double p_min, double p_max, int steps, double P, std::ostream& out);

/// Scaling study: log eps against log |||B_eps|||_{p''} for the disc-jump
/// strip family; one row per (p, eps).
struct ScalingOptions {
    std::vector<double> p_values{3.0, 4.0};
    int eps_pow_min = 3;  // eps = 2^-k for k in [min, max]
    int eps_pow_max = 7;
    JumpDiscSpec geometry{{0.5, 0.5}, 0.3, 10.0, 1.0, 0.0};
    int integration_n = 64;
    int quad_order = 5;
    double resolve_factor = 8.0;
};
int run_scaling(const ScalingOptions& options, std::ostream& out);

}  // namespace modisc

#endif
