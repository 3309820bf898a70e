// Acceptance suite: every guarantee the library advertises, checked against
// independent oracles (manufactured solutions, closed forms, dense scans,
// overkill references). One pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "modisc/config.hpp"
#include "modisc/strategy.hpp"

using namespace modisc;

namespace {

constexpr double kPi = std::numbers::pi;

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

int failures = 0;
std::vector<std::string> notes;

void report(int index, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%d/9] %s %s  (%s)\n", index, pass ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ScalarField sine_load() {
    return [](const Vec2& x) {
        return 2.0 * kPi * kPi * std::sin(kPi * x.x) * std::sin(kPi * x.y);
    };
}

auto sine_gradient() {
    return [](const Vec2& x) {
        return Vec2{kPi * std::cos(kPi * x.x) * std::sin(kPi * x.y),
                    kPi * std::sin(kPi * x.x) * std::cos(kPi * x.y)};
    };
}

JumpDiscSpec scaling_spec(double eps) {
    JumpDiscSpec s;
    s.center = {0.5, 0.5};
    s.radius = 0.3;
    s.k_in = 10.0;
    s.k_out = 1.0;
    s.eps = eps;
    return s;
}

// ---------------------------------------------------------------------------
// 1. Guaranteed discretization bound on the manufactured Poisson problem.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const auto identity = make_constant_coefficient(1.0);
    const ScalarField f = sine_load();
    bool pass = true;
    std::ostringstream detail;
    for (int n : {8, 16, 32}) {
        const TriangleMesh mesh = build_structured_square(n);
        const SparseSystem sys = assemble(mesh, identity, f, 5);
        const FeFunction u = solve_cg(sys);
        const double C_Omega = friedrichs_bound(mesh, 1.0).C_Omega;
        const MinimizeResult res = minimize_majorant(u, f, identity, C_Omega, 5);
        const double truth = energy_error_against(u, sine_gradient(), nullptr, 5);
        const double eff = res.breakdown.optimal_value / truth;
        pass = pass && res.breakdown.optimal_value >= truth && eff >= 1.0 && eff <= 3.0;
        detail << "n=" << n << " eff=" << eff << "  ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 30.0;
    detail << "time=" << elapsed << "s";
    report(1, pass, "majorant bounds the true energy error, efficiency in [1,3]", detail.str());
}

// ---------------------------------------------------------------------------
// 2. Gamma optimality: closed form against dense scans and random gammas.
void criterion_2() {
    const auto identity = make_constant_coefficient(1.0);
    const ScalarField f = sine_load();
    const TriangleMesh mesh = build_structured_square(16);
    const SparseSystem sys = assemble(mesh, identity, f, 5);
    const FeFunction u = solve_cg(sys);
    const double C_Omega = friedrichs_bound(mesh, 1.0).C_Omega;
    const MinimizeResult res = minimize_majorant(u, f, identity, C_Omega, 3);
    const MajorantBreakdown opt =
        evaluate_majorant(u, res.flux, f, identity, std::nullopt, C_Omega);

    bool pass = true;
    SplitMix64 rng(101);
    for (int i = 0; i < 50; ++i) {
        const double gamma = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
        const MajorantBreakdown at =
            evaluate_majorant(u, res.flux, f, identity, gamma, C_Omega);
        pass = pass && at.value >= opt.optimal_value - 1e-12;
    }

    // 10^4-point scan of the gamma combination against (a+b)^2
    double scan_min = std::numeric_limits<double>::max();
    for (int i = 0; i < 10000; ++i) {
        const double gamma = std::pow(10.0, -3.0 + 6.0 * i / 9999.0);
        scan_min = std::min(scan_min,
                            combine_majorant(opt.flux_term, opt.residual_term, gamma));
    }
    const double closed = opt.optimal_value * opt.optimal_value;
    const double rel = std::abs(scan_min * scan_min - closed) / closed;
    pass = pass && rel < 1e-6;

    char buf[128];
    std::snprintf(buf, sizeof(buf), "scan-vs-closed rel=%.2e, 50 random gammas dominated", rel);
    report(2, pass, "gamma-optimal majorant", buf);
}

// ---------------------------------------------------------------------------
// 3. eps-scaling of |||B_eps|||_{p''} for the 10:1 disc-jump strip family.
void criterion_3() {
    const auto start = std::chrono::steady_clock::now();
    const TriangleMesh mesh = build_structured_square(64);
    bool pass = true;
    std::ostringstream detail;
    for (double p : {3.0, 4.0}) {
        const double p_pp = p / (p - 2.0);
        std::vector<double> lx, ly;
        for (int k = 3; k <= 7; ++k) {
            const double eps = std::pow(2.0, -k);
            const ModelPair pair = make_model_pair(make_disc_coefficient(scaling_spec(0.0)),
                                                   smooth_disc_coefficient(scaling_spec(eps)));
            const MatrixField b = make_B_eps(pair.exact, pair.simplified);
            const double norm = field_norm(b, p_pp, p, mesh, 5, model_pair_hint(pair, eps, 8.0));
            lx.push_back(std::log(eps));
            ly.push_back(std::log(norm));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(lx.size());
        for (int i = 0; i < n; ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double target = 1.0 / p_pp;
        pass = pass && std::abs(slope - target) <= 0.15 * target;
        detail << "p=" << p << " slope=" << slope << " target=" << target << "  ";
    }
    const double elapsed = seconds_since(start);
    pass = pass && elapsed < 60.0;
    detail << "time=" << elapsed << "s";
    report(3, pass, "|||B_eps|||_{p''} scales like eps^{1/p''} (15%)", detail.str());
}

// ---------------------------------------------------------------------------
// 4. Combined guaranteed bound against an interface-resolved overkill
//    reference of the original jump problem.
void criterion_4() {
    const JumpDiscSpec sharp = scaling_spec(0.0);
    const double eps = 0.125;
    const auto a0 = make_disc_coefficient(sharp);
    const auto aeps = smooth_disc_coefficient(scaling_spec(eps));
    const ScalarField f = [](const Vec2&) { return 1.0; };
    const ModelPair model = make_model_pair(a0, aeps);
    const SubdivisionHint hint = model_pair_hint(model, eps, 8.0);

    // coarse solve of the simplified problem on the 64 x 64 grid
    const TriangleMesh mesh64 = build_structured_square(64);
    const SparseSystem sys = assemble(mesh64, aeps, f, 5);
    const FeFunction u_h = solve_cg(sys);
    const double C_Omega = friedrichs_bound(mesh64, aeps.analytic_bounds->first).C_Omega;
    const MinimizeResult min_res = minimize_majorant(u_h, f, aeps, C_Omega, 5, 5, hint);

    EstimatorSettings settings;
    settings.P = 4.0;
    settings.integration_n = 64;
    const ErrorReport r =
        compute_report(u_h, min_res.breakdown, model, f, eps, C_Omega, settings);

    // overkill reference: three refinements of the same grid, original A0
    const RefinedMesh r1 = refine_uniform_with_map(mesh64);
    const RefinedMesh r2 = refine_uniform_with_map(r1.mesh);
    const RefinedMesh r3 = refine_uniform_with_map(r2.mesh);
    const TriangleMesh& mesh512 = r3.mesh;
    const SparseSystem ref_sys = assemble(mesh512, a0, f, 5);
    const FeFunction u_ref = solve_cg(ref_sys);

    // slack: the reference's own guaranteed error bound (one flux sweep; the
    // majorant is valid for any admissible flux, so a loose inner tolerance
    // only costs sharpness)
    const SubdivisionHint circle_hint =
        circle_band_hint(sharp.center, {sharp.radius}, mesh512.max_element_diameter() / 8.0);
    const double C_Omega0 = friedrichs_bound(mesh512, a0.analytic_bounds->first).C_Omega;
    const double slack =
        minimize_majorant(u_ref, f, a0, C_Omega0, 1, 5, circle_hint, 1e-6)
            .breakdown.optimal_value;

    // A0-energy distance between the reference and the prolonged coarse solution
    const FeFunction p1 = prolongate(u_h, r1);
    const FeFunction p2 = prolongate(p1, r2);
    const FeFunction p3 = prolongate(p2, r3);
    FeFunction diff;
    diff.mesh = &mesh512;
    diff.nodal_values.resize(mesh512.num_vertices());
    for (int v = 0; v < mesh512.num_vertices(); ++v)
        diff.nodal_values[v] = u_ref.nodal_values[v] - p3.nodal_values[v];
    const auto zero_grad = [](const Vec2&) { return Vec2{0.0, 0.0}; };
    const double measured = energy_error_against(diff, zero_grad, &a0, 5, circle_hint);

    const bool pass = measured <= r.total_combined + slack && measured <= r.total_apriori + slack;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "error=%.4f slack=%.4f combined=%.4f apriori=%.4f", measured, slack,
                  r.total_combined, r.total_apriori);
    report(4, pass, "true A0-energy error below both combined bounds", buf);
}

// ---------------------------------------------------------------------------
// 5. Limit-case collapse A_eps = A0.
void criterion_5() {
    const auto a0 = make_disc_coefficient(scaling_spec(0.0));
    const ScalarField f = [](const Vec2&) { return 1.0; };
    const TriangleMesh mesh = build_structured_square(16);
    const SparseSystem sys = assemble(mesh, a0, f, 5);
    const FeFunction u = solve_cg(sys);
    const double C_Omega = friedrichs_bound(mesh, a0.analytic_bounds->first).C_Omega;
    const MinimizeResult res = minimize_majorant(u, f, a0, C_Omega, 2);

    EstimatorSettings settings;
    settings.P = 4.0;
    settings.integration_n = 32;
    const ErrorReport r = compute_report(u, res.breakdown, make_model_pair(a0, a0), f, 0.0,
                                         C_Omega, settings);
    const bool pass = r.B_ppp == 0.0 && r.D_inf == 1.0 && r.total_combined == r.majorant &&
                      r.total_apriori == r.majorant && r.mod_bound == 0.0;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "B_ppp=%g D_inf=%g total1-M=%g total2-M=%g", r.B_ppp,
                  r.D_inf, r.total_combined - r.majorant, r.total_apriori - r.majorant);
    report(5, pass, "A_eps = A0 collapses both totals to the majorant exactly", buf);
}

// ---------------------------------------------------------------------------
// 6. Constants suite.
void criterion_6() {
    bool pass = true;
    std::ostringstream detail;

    pass = pass && std::abs(czygmund_C(2) - (128.0 + 2.0 * kPi)) < 1e-10;
    pass = pass && std::abs(czygmund_C(3) - (416.0 + 4.0 * kPi * std::sqrt(3.0))) < 1e-10;

    for (int d : {2, 3}) {
        pass = pass && std::abs(czygmund_C1(d, 2.0) - 1.0) < 1e-14;
        // adjacent branch formulas evaluated at each junction point
        const double C32 = czygmund_Cdp(d, 1.5);
        const auto branch2 = [C32](double p) { return std::pow(C32, 3.0 / p * (2.0 - p)); };
        const auto branch3 = [C32](double p) {
            const double pp = p / (p - 1.0);
            return std::pow(C32, 3.0 / pp * (2.0 - pp));
        };
        pass = pass && std::abs(czygmund_Cdp(d, 1.5) - branch2(1.5)) < 1e-10;   // p = 3/2
        pass = pass && std::abs(branch2(2.0) - branch3(2.0)) < 1e-10;           // p = 2
        pass = pass && std::abs(branch3(3.0) - czygmund_Cdp(d, 1.5)) < 1e-10;   // p = 3
        SplitMix64 rng(600 + d);
        for (int i = 0; i < 20; ++i) {
            const double p = 1.0 + 20.0 * rng.uniform() + 1e-6;
            const double sym =
                std::abs(czygmund_C1(d, p) - czygmund_C1(d, p / (p - 1.0)));
            pass = pass && sym <= 1e-10 * czygmund_C1(d, p);
        }
    }

    for (double P : {3.0, 6.0, 12.0}) {
        for (double C_P : {2.0, 8.0, 64.0}) {
            pass = pass && std::abs(p_star(0.0, P, C_P) - 2.0) < 1e-14;
            pass = pass && p_star(1.0 - 1.0 / C_P, P, C_P) == P;
            pass = pass && p_star(1.0 - 0.5 / C_P, P, C_P) == P;
            pass = pass && p_star(1.0, P, C_P) == P;
        }
    }

    SplitMix64 rng(601);
    double worst_theta = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = 2.0 + 5.0 * rng.uniform() + 1e-9;
        const double t = r + 5.0 * rng.uniform() + 1e-9;
        const double th = theta(r, t);
        worst_theta =
            std::max(worst_theta, std::abs(1.0 / r - (th / 2.0 + (1.0 - th) / t)));
    }
    pass = pass && worst_theta < 1e-14;
    detail << "theta-identity worst=" << worst_theta;
    report(6, pass, "explicit constants: C(d), C1 branches/symmetry, p*, theta", detail.str());
}

// ---------------------------------------------------------------------------
// 7. Interpolation inequality for piecewise-constant fields.
void criterion_7() {
    SplitMix64 rng(700);
    bool pass = true;
    for (int trial = 0; trial < 100; ++trial) {
        TriangleMesh mesh = build_structured_square(2 + static_cast<int>(rng.next() % 7));
        if (rng.next() % 2 == 0) mesh = refine_uniform(mesh);
        std::vector<double> values(mesh.num_triangles());
        for (double& v : values) v = 2.0 * rng.uniform() - 1.0;

        auto norm = [&](double s) {
            double acc = 0.0;
            for (int t = 0; t < mesh.num_triangles(); ++t)
                acc += element_geometry(mesh, t).area * std::pow(std::abs(values[t]), s);
            return std::pow(acc, 1.0 / s);
        };
        const double r = 2.0 + 8.0 * rng.uniform() * 0.99 + 1e-6;
        const double t = r + (10.0 - r) * rng.uniform();
        if (t <= r) continue;
        const double th = theta(r, t);
        const double lhs = norm(r);
        const double rhs = std::pow(norm(2.0), th) * std::pow(norm(t), 1.0 - th);
        pass = pass && lhs <= rhs * (1.0 + 1e-12);
    }
    report(7, pass, "||u||_r <= ||u||_2^theta ||u||_t^{1-theta} on random fields", "100 trials");
}

// ---------------------------------------------------------------------------
// 8. Mixed-norm oracle.
void criterion_8() {
    bool pass = true;
    double worst_scalar = 0.0, worst_spectral = 0.0;
    for (double p : {2.0, 2.5, 4.0, 10.0}) {
        const double pprime = p / (p - 1.0);
        for (double kappa : {0.5, 1.0, 7.25}) {
            const double expected = kappa * std::pow(2.0, 1.0 / pprime - 1.0 / p);
            const double got = matrix_mixed_norm(SymMat2::scalar(kappa), p);
            worst_scalar = std::max(worst_scalar, std::abs(got - expected) / expected);
        }
    }
    pass = pass && worst_scalar < 1e-6;

    SplitMix64 rng(800);
    for (int i = 0; i < 100; ++i) {
        const SymMat2 m{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0,
                        4.0 * rng.uniform() - 2.0};
        const double spec = spectral_norm(m);
        if (spec == 0.0) continue;
        worst_spectral =
            std::max(worst_spectral, std::abs(matrix_mixed_norm(m, 2.0) - spec) / spec);
    }
    pass = pass && worst_spectral < 1e-8;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "scalar worst=%.2e, spectral worst=%.2e", worst_scalar,
                  worst_spectral);
    report(8, pass, "mixed norm against closed scalar form and spectral norm", buf);
}

// ---------------------------------------------------------------------------
// 9. Strategy loop on the disc-jump benchmark, decisions audited from the CSV.
void criterion_9() {
    RunConfig cfg;  // disc_jump defaults
    cfg.integration_n = 32;

    // initial total from a single-step run
    cfg.delta = std::numeric_limits<double>::infinity();
    cfg.budget = 1;
    std::ostringstream first_csv, log;
    run_solve(cfg, first_csv, log);
    double total0 = 0.0;
    {
        std::istringstream lines(first_csv.str());
        std::string line;
        std::getline(lines, line);  // version
        std::getline(lines, line);  // columns
        std::getline(lines, line);  // single data row
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        total0 = std::stod(cells[31]);  // total_combined column
    }

    cfg.delta = 0.5 * total0;
    cfg.budget = 20;
    std::ostringstream csv;
    const int code = run_solve(cfg, csv, log);

    bool pass = code == 0;
    int steps = 0;
    bool mixed_refine = false, mixed_sharpen = false;
    std::istringstream lines(csv.str());
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);  // skip header
    std::string last_action;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        const std::string action = cells[1];
        const double disc = std::stod(cells[29]);
        const double mod = std::stod(cells[30]);
        ++steps;
        last_action = action;
        if (action == "refine" || action == "sharpen") {
            const std::string predicate = disc >= mod ? "refine" : "sharpen";
            pass = pass && action == predicate;
            mixed_refine = mixed_refine || action == "refine";
            mixed_sharpen = mixed_sharpen || action == "sharpen";
        }
    }
    pass = pass && steps <= 20 && last_action == "converged" && mixed_refine && mixed_sharpen;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "steps=%d delta=%.3g exit=%d mixed history", steps,
                  cfg.delta, code);
    report(9, pass, "adaptive loop converges and decisions match disc>=mod", buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::printf("RESULT: 9/9 criteria passed\n");
        return 0;
    }
    std::printf("RESULT: %d/9 criteria FAILED\n", failures);
    return 1;
}
