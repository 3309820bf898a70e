#include "modisc/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "modisc/fem.hpp"

namespace modisc {

namespace {

ExponentSelection make_selection(double P, double p_star_value, double fp, double ft) {
    ExponentSelection sel;
    sel.P = P;
    sel.p_star = p_star_value;
    sel.p = 2.0 + fp * (p_star_value - 2.0);
    sel.t = sel.p + ft * (p_star_value - sel.p);
    sel.t = std::min(sel.t, P);  // t <= P so that f in L^P controls ||f||_t
    sel.p_pp = sel.p / (sel.p - 2.0);
    sel.theta = theta(sel.p, sel.t);
    return sel;
}

}  // namespace

std::vector<ExponentSelection> exponent_candidates(double P, double alpha, double beta,
                                                   double C_P, ExponentPolicy policy) {
    if (!(P > 2.0)) throw std::invalid_argument("exponent_candidates: need P > 2");
    if (!(alpha > 0.0) || !(beta >= alpha))
        throw std::invalid_argument("exponent_candidates: need 0 < alpha <= beta");
    const double ps = p_star(alpha / beta, P, C_P);
    if (!(ps > 2.0 + 1e-9))
        throw std::domain_error(
            "exponent_candidates: p* degenerate; reduce jump ratio or increase P");
    std::vector<ExponentSelection> out;
    if (policy == ExponentPolicy::Default) {
        // default: p halfway to p*, t three quarters of the way
        out.push_back(make_selection(P, ps, 0.5, 0.5));
    } else {
        for (double fp : {0.25, 0.5, 0.75})
            for (double ft : {0.25, 0.5, 0.75}) out.push_back(make_selection(P, ps, fp, ft));
    }
    return out;
}

double disc_bound(const MajorantBreakdown& majorant, double D_inf) {
    return std::sqrt(D_inf) * majorant.optimal_value;
}

ModBoundParts mod_bound(double grad_t, double grad_p, const MajorantBreakdown& majorant,
                        double B_ppp, const ExponentSelection& sel, double c_reg_t,
                        double f_norm_t, double alpha_eps) {
    if (!(sel.theta >= 0.0) || !(sel.theta <= 1.0))
        throw std::invalid_argument("mod_bound: inadmissible exponents");
    ModBoundParts parts;
    parts.regularity_factor = std::pow(c_reg_t * f_norm_t + grad_t, 1.0 - sel.theta) *
                    std::pow(alpha_eps, -0.5 * sel.theta);
    parts.modelling_amplitude = std::pow(majorant.optimal_value, sel.theta) * parts.regularity_factor + grad_p;
    parts.bound = std::sqrt(B_ppp) * parts.modelling_amplitude;
    return parts;
}

double total_bound_combined(const MajorantBreakdown& majorant, double D_inf, double B_ppp,
                           double regularity_factor, double theta_val, double grad_p) {
    const double sqrt_b = std::sqrt(B_ppp);
    return std::sqrt(D_inf) * majorant.optimal_value +
           sqrt_b * std::pow(majorant.optimal_value, theta_val) * regularity_factor + sqrt_b * grad_p;
}

double total_bound_apriori(const MajorantBreakdown& majorant, double D_inf, double B_ppp,
                           double c_reg_p, double f_norm_p) {
    return std::sqrt(D_inf) * majorant.optimal_value + std::sqrt(B_ppp) * c_reg_p * f_norm_p;
}

SubdivisionHint model_pair_hint(const ModelPair& model, double eps, double resolve_factor) {
    const auto radii = model.nonsmooth_radii();
    if (radii.empty() || !model.exact.disc_info) return {};
    const double base = eps > 0.0 ? eps : model.exact.disc_info->radius;
    return circle_band_hint(model.exact.disc_info->center, radii, base / resolve_factor);
}

namespace {

const char* kCsvColumns =
    "step,action,n_vertices,n_triangles,h_max,eps,P,p,t,p_pp,theta,p_star,gamma,flux_term,"
    "residual_term,majorant,D_inf,B_ppp,regularity_factor,modelling_amplitude,c_reg_t,c_reg_p,f_norm_t,f_norm_p,"
    "grad_t,grad_p,alpha_eps,beta_eps,sampled_bounds,disc_bound,mod_bound,total_combined,"
    "total_apriori,q_report,coeff_diff_q,C_L,C_Omega,quad_order,integration_n,flux_iters,"
    "true_error,majorant_monotone_violated,c1_boundary_caveat";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string error_report_csv_header() {
    return std::string("# modisc error-report v1\n") + kCsvColumns;
}

std::string error_report_csv_row(const ErrorReport& r) {
    std::ostringstream out;
    out << r.step << ',' << r.action << ',' << r.n_vertices << ',' << r.n_triangles << ','
        << fmt(r.h_max) << ',' << fmt(r.eps) << ',' << fmt(r.P) << ',' << fmt(r.p) << ','
        << fmt(r.t) << ',' << fmt(r.p_pp) << ',' << fmt(r.theta) << ',' << fmt(r.p_star) << ','
        << fmt(r.gamma) << ',' << fmt(r.flux_term) << ',' << fmt(r.residual_term) << ','
        << fmt(r.majorant) << ',' << fmt(r.D_inf) << ',' << fmt(r.B_ppp) << ','
        << fmt(r.regularity_factor) << ',' << fmt(r.modelling_amplitude) << ',' << fmt(r.c_reg_t) << ','
        << fmt(r.c_reg_p) << ',' << fmt(r.f_norm_t) << ',' << fmt(r.f_norm_p) << ','
        << fmt(r.grad_t) << ',' << fmt(r.grad_p) << ',' << fmt(r.alpha_eps) << ','
        << fmt(r.beta_eps) << ',' << (r.sampled_bounds ? 1 : 0) << ',' << fmt(r.disc_bound)
        << ',' << fmt(r.mod_bound) << ',' << fmt(r.total_combined) << ','
        << fmt(r.total_apriori) << ',' << fmt(r.q_report) << ',' << fmt(r.coeff_diff_q) << ','
        << fmt(r.C_L) << ',' << fmt(r.C_Omega) << ',' << r.quad_order << ','
        << r.integration_n << ',' << r.flux_iters << ','
        << (r.true_error ? fmt(*r.true_error) : std::string("")) << ','
        << (r.majorant_monotone_violated ? 1 : 0) << ',' << (r.c1_boundary_caveat ? 1 : 0);
    return out.str();
}

ErrorReport compute_report(const FeFunction& u, const MajorantBreakdown& majorant,
                           const ModelPair& model, const ScalarField& f, double eps,
                           double C_Omega, const EstimatorSettings& settings,
                           std::optional<double> true_error) {
    const TriangleMesh& fe_mesh = *u.mesh;
    ErrorReport r;
    r.n_vertices = fe_mesh.num_vertices();
    r.n_triangles = fe_mesh.num_triangles();
    r.h_max = fe_mesh.max_element_diameter();
    r.eps = eps;
    r.P = settings.P;
    r.C_L = settings.C_L;
    r.quad_order = settings.quad_order;
    r.integration_n = settings.integration_n;
    r.q_report = settings.q_report;
    r.C_Omega = C_Omega;
    r.true_error = true_error;

    r.gamma = majorant.gamma;
    r.flux_term = majorant.flux_term;
    r.residual_term = majorant.residual_term;
    r.majorant = majorant.optimal_value;

    const TriangleMesh integration_mesh = build_structured_square(settings.integration_n);
    const SubdivisionHint hint = model_pair_hint(model, eps, settings.resolve_factor);

    bool sampled = false;
    const auto [alpha, beta] =
        spectral_bounds(model.simplified, integration_mesh, settings.quad_order, &sampled);
    r.alpha_eps = alpha;
    r.beta_eps = beta;
    r.sampled_bounds = sampled;

    bool d_sampled = false;
    r.D_inf = sup_D_eps(model, integration_mesh, settings.quad_order, &d_sampled);
    r.sampled_bounds = r.sampled_bounds || d_sampled;

    const double C_P = laplace_constant_bound(settings.P, 2, settings.C_L);
    const auto candidates = exponent_candidates(settings.P, alpha, beta, C_P, settings.policy);

    const MatrixField b_field = make_B_eps(model.exact, model.simplified);
    const bool exact_model = model.exact_model();

    double best_total = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (const auto& sel : candidates) {
        ErrorReport cand = r;
        cand.p = sel.p;
        cand.t = sel.t;
        cand.p_pp = sel.p_pp;
        cand.theta = sel.theta;
        cand.p_star = sel.p_star;

        cand.B_ppp = exact_model ? 0.0
                                 : field_norm(b_field, sel.p_pp, sel.p, integration_mesh,
                                              settings.quad_order, hint);

        RegularityInputs reg_t{alpha, beta, settings.P, sel.t, settings.C_L, 2};
        RegularityInputs reg_p{alpha, beta, settings.P, sel.p, settings.C_L, 2};
        cand.c_reg_t = c_reg(reg_t, C_P);
        cand.c_reg_p = c_reg(reg_p, C_P);

        // data norms live on the integration mesh so that the
        // discretization-independent modelling term really is h-independent
        cand.f_norm_t = f_norm(f, sel.t, integration_mesh, settings.quad_order);
        cand.f_norm_p = f_norm(f, sel.p, integration_mesh, settings.quad_order);
        cand.grad_t = grad_norm(u, sel.t);
        cand.grad_p = grad_norm(u, sel.p);

        const ModBoundParts mod = mod_bound(cand.grad_t, cand.grad_p, majorant, cand.B_ppp, sel,
                                            cand.c_reg_t, cand.f_norm_t, alpha);
        cand.regularity_factor = mod.regularity_factor;
        cand.modelling_amplitude = mod.modelling_amplitude;
        cand.mod_bound = mod.bound;
        cand.disc_bound = disc_bound(majorant, cand.D_inf);
        cand.total_combined = cand.disc_bound + cand.mod_bound;
        cand.total_apriori =
            total_bound_apriori(majorant, cand.D_inf, cand.B_ppp, cand.c_reg_p, cand.f_norm_p);

        if (!have_best || cand.total_combined < best_total) {
            best_total = cand.total_combined;
            have_best = true;
            r = cand;
        }
    }

    r.coeff_diff_q = coefficient_difference_norm(model, settings.q_report, integration_mesh,
                                                 settings.quad_order, hint);
    return r;
}

}  // namespace modisc
