// Command line driver: solve (adaptive loop), constants (table for the
// explicit constants), scaling (eps study of the modelling norm).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "modisc/config.hpp"

namespace {

int with_output(const std::string& path, const std::function<int(std::ostream&)>& fn) {
    if (path.empty() || path == "-") return fn(std::cout);
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot open output file '" << path << "'\n";
        return 1;
    }
    return fn(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combined modelling-discretization error control for 2-D diffusion"};
    app.require_subcommand(1);

    // solve
    std::string config_path;
    std::string solve_out;
    CLI::App* solve = app.add_subcommand("solve", "run the adaptive strategy from a config file");
    solve->add_option("config", config_path, "key = value configuration file")->required();
    solve->add_option("--out", solve_out, "CSV output path (overrides the config's 'out')");

    // constants
    int d = 2;
    double p_min = 1.05, p_max = 40.0, P = 4.0;
    int steps = 200;
    std::string constants_out;
    CLI::App* constants = app.add_subcommand("constants", "emit the constants table as CSV");
    constants->add_option("--d", d, "dimension (2 or 3)");
    constants->add_option("--p-min", p_min, "lower end of the p sweep");
    constants->add_option("--p-max", p_max, "upper end of the p sweep");
    constants->add_option("--steps", steps, "number of rows");
    constants->add_option("--P", P, "data integrability exponent for eta and p*");
    constants->add_option("--out", constants_out, "CSV output path (default stdout)");

    // scaling
    modisc::ScalingOptions scaling_options;
    std::string scaling_out;
    std::vector<double> p_values;
    CLI::App* scaling = app.add_subcommand("scaling", "eps-scaling study of |||B_eps|||_{p''}");
    scaling->add_option("--p", p_values, "working exponents (repeatable; default 3 4)");
    scaling->add_option("--eps-pow-min", scaling_options.eps_pow_min, "smallest k in eps = 2^-k");
    scaling->add_option("--eps-pow-max", scaling_options.eps_pow_max, "largest k in eps = 2^-k");
    scaling->add_option("--k-in", scaling_options.geometry.k_in, "diffusivity inside the disc");
    scaling->add_option("--k-out", scaling_options.geometry.k_out, "diffusivity outside");
    scaling->add_option("--radius", scaling_options.geometry.radius, "disc radius");
    scaling->add_option("--cx", scaling_options.geometry.center.x, "disc center x");
    scaling->add_option("--cy", scaling_options.geometry.center.y, "disc center y");
    scaling->add_option("--n-int", scaling_options.integration_n, "integration grid resolution");
    scaling->add_option("--out", scaling_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            const modisc::RunConfig config = modisc::parse_config_file(config_path);
            const std::string out_path = !solve_out.empty() ? solve_out : config.out;
            return with_output(out_path, [&](std::ostream& out) {
                return modisc::run_solve(config, out, std::cerr);
            });
        }
        if (constants->parsed()) {
            return with_output(constants_out, [&](std::ostream& out) {
                return modisc::run_constants(d, p_min, p_max, steps, P, out);
            });
        }
        if (!p_values.empty()) scaling_options.p_values = p_values;
        return with_output(scaling_out, [&](std::ostream& out) {
            return modisc::run_scaling(scaling_options, out);
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
