#ifndef MODISC_ESTIMATOR_HPP
#define MODISC_ESTIMATOR_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modisc/coeff.hpp"
#include "modisc/constants.hpp"
#include "modisc/majorant.hpp"

namespace modisc {

enum class ExponentPolicy { Default, Scan };

/// Admissible exponent choice 2 < p < t < p*(alpha/beta, P) <= P.
struct ExponentSelection {
    double P = 0.0;
    double p = 0.0;
    double t = 0.0;
    double p_pp = 0.0;    // p / (p - 2)
    double theta = 0.0;   // theta(p, t)
    double p_star = 0.0;  // p*(alpha/beta, P)
};

/// Candidate selections for the policy: one for Default, a 9-point (p,t) grid
/// for Scan (ordered by ascending p, then t; ties in a later minimization are
/// broken toward smaller p by keeping the first minimum).
std::vector<ExponentSelection> exponent_candidates(double P, double alpha, double beta,
                                                   double C_P, ExponentPolicy policy);

inline ExponentSelection select_exponents(double P, double alpha, double beta, double C_P,
                                          ExponentPolicy policy = ExponentPolicy::Default) {
    return exponent_candidates(P, alpha, beta, C_P, policy).front();
}

/// sqrt(D_inf) * M.
double disc_bound(const MajorantBreakdown& majorant, double D_inf);

struct ModBoundParts {
    double regularity_factor = 0.0;
    double modelling_amplitude = 0.0;
    double bound = 0.0;
};

/// Upsilon = (c_reg ||f||_t + ||grad u_h||_t)^{1-theta} alpha_eps^{-theta/2},
/// Theta = M^theta Upsilon + ||grad u_h||_p, bound = sqrt(B_ppp) * Theta.
ModBoundParts mod_bound(double grad_t, double grad_p, const MajorantBreakdown& majorant,
                        double B_ppp, const ExponentSelection& sel, double c_reg_t,
                        double f_norm_t, double alpha_eps);

/// Three-term bound sqrt(D) M + sqrt(B) M^theta Upsilon + sqrt(B) ||grad u||_p;
/// equals disc_bound + mod_bound by construction.
double total_bound_combined(const MajorantBreakdown& majorant, double D_inf, double B_ppp,
                           double regularity_factor, double theta_val, double grad_p);

/// Two-term bound sqrt(D) M + sqrt(B) c_reg(p) ||f||_p, whose second term is
/// independent of the discretization.
double total_bound_apriori(const MajorantBreakdown& majorant, double D_inf, double B_ppp,
                           double c_reg_p, double f_norm_p);

/// Full set of bound components for one adaptive step.
struct ErrorReport {
    int step = 0;
    std::string action;  // refine | sharpen | converged | budget_exhausted | (empty)
    int n_vertices = 0;
    int n_triangles = 0;
    double h_max = 0.0;
    double eps = 0.0;  // 0 means the model is exact

    double P = 0.0, p = 0.0, t = 0.0, p_pp = 0.0, theta = 0.0, p_star = 0.0;

    double gamma = 1.0;
    double flux_term = 0.0;
    double residual_term = 0.0;
    double majorant = 0.0;  // gamma-optimal value a + b

    double D_inf = 1.0;
    double B_ppp = 0.0;
    double regularity_factor = 0.0;
    double modelling_amplitude = 0.0;
    double c_reg_t = 0.0;
    double c_reg_p = 0.0;

    double f_norm_t = 0.0, f_norm_p = 0.0;
    double grad_t = 0.0, grad_p = 0.0;

    double alpha_eps = 0.0, beta_eps = 0.0;
    bool sampled_bounds = false;  // spectral bounds sampled rather than analytic

    double disc_bound = 0.0;
    double mod_bound = 0.0;
    double total_combined = 0.0;
    double total_apriori = 0.0;

    double q_report = 2.0;
    double coeff_diff_q = 0.0;  // ||A0 - A_eps||_{q,Omega}

    double C_L = 1.0;
    double C_Omega = 0.0;
    int quad_order = 5;
    int integration_n = 0;
    int flux_iters = 0;

    std::optional<double> true_error;
    bool majorant_monotone_violated = false;
    // The regularity constants assume a C^1 boundary; on the polygonal
    // square they are applied outside that hypothesis and flagged as such.
    bool c1_boundary_caveat = true;
};

/// Versioned CSV header plus one-row serialization (17 significant digits).
std::string error_report_csv_header();
std::string error_report_csv_row(const ErrorReport& report);

struct EstimatorSettings {
    double P = 4.0;
    double C_L = 1.0;
    ExponentPolicy policy = ExponentPolicy::Default;
    int quad_order = 5;
    int integration_n = 64;   // structured integration mesh for coefficient norms
    double q_report = 2.0;
    double resolve_factor = 8.0;  // strip resolution target h <= eps / factor
};

/// Evaluates every component of the combined error bounds for one solved state.
/// C_Omega is the constant the majorant was built with (recorded only).
ErrorReport compute_report(const FeFunction& u, const MajorantBreakdown& majorant,
                           const ModelPair& model, const ScalarField& f, double eps,
                           double C_Omega, const EstimatorSettings& settings,
                           std::optional<double> true_error = std::nullopt);

/// Subdivision hint resolving the non-smooth circles of the pair down to
/// h <= eps/resolve_factor (inactive when the pair has no such structure).
SubdivisionHint model_pair_hint(const ModelPair& model, double eps, double resolve_factor);

}  // namespace modisc

#endif
