#include "modisc/strategy.hpp"

#include <cmath>
#include <stdexcept>

namespace modisc {

namespace {

ModelPair current_model(const Problem& problem, double eps) {
    return make_model_pair(problem.a0, eps > 0.0 ? problem.simplify(eps) : problem.a0);
}

}  // namespace

AdaptiveState make_initial_state(const Problem& problem, int n0) {
    AdaptiveState state;
    state.mesh = std::make_shared<TriangleMesh>(build_structured_square(n0));
    state.eps = problem.eps0;
    state.model = current_model(problem, state.eps);
    return state;
}

AdaptiveState step(const Problem& problem, AdaptiveState state, const StrategySettings& settings) {
    if (state.converged || state.budget_exhausted)
        throw std::logic_error("step: loop already finished");
    if (static_cast<int>(state.history.size()) >= settings.budget) {
        state.budget_exhausted = true;
        return state;
    }

    const TriangleMesh& mesh = *state.mesh;
    const CoefficientField& a_eps = state.model.simplified;

    const auto [alpha, beta] = a_eps.analytic_bounds
                                   ? *a_eps.analytic_bounds
                                   : spectral_bounds(a_eps, mesh, settings.estimator.quad_order);
    const FriedrichsBound fb = friedrichs_bound(mesh, alpha);

    const SparseSystem sys = assemble(mesh, a_eps, problem.f, settings.estimator.quad_order);
    const FeFunction u = solve_cg(sys, settings.cg_tol);

    const SubdivisionHint hint =
        model_pair_hint(state.model, state.eps, settings.estimator.resolve_factor);
    const MinimizeResult min_result =
        minimize_majorant(u, problem.f, a_eps, fb.C_Omega, settings.flux_iters,
                          settings.estimator.quad_order, hint, settings.cg_tol);

    std::optional<double> true_error;
    if (problem.exact_gradient)
        true_error = energy_error_against(u, *problem.exact_gradient, &state.model.exact,
                                          settings.estimator.quad_order, hint);

    ErrorReport report = compute_report(u, min_result.breakdown, state.model, problem.f,
                                        state.eps, fb.C_Omega, settings.estimator, true_error);
    report.step = static_cast<int>(state.history.size());
    report.flux_iters = settings.flux_iters;

    // On a refinement of the same model the minimized majorant should not
    // grow; a violation is recorded, not fatal.
    if (!state.history.empty()) {
        const ErrorReport& prev = state.history.back();
        if (prev.action == "refine" && prev.eps == report.eps &&
            report.majorant > prev.majorant + 1e-10)
            report.majorant_monotone_violated = true;
    }

    state.last_solution = u;
    if (report.total_combined <= settings.delta) {
        report.action = "converged";
        state.converged = true;
    } else if (static_cast<int>(state.history.size()) + 1 >= settings.budget) {
        report.action = "budget_exhausted";
        state.budget_exhausted = true;
    } else if (report.disc_bound >= report.mod_bound) {
        report.action = "refine";
        state.mesh = std::make_shared<TriangleMesh>(refine_uniform(mesh));
    } else {
        report.action = "sharpen";
        state.eps *= 0.5;
        state.model = current_model(problem, state.eps);
    }
    state.history.push_back(std::move(report));
    return state;
}

AdaptiveState run_strategy(const Problem& problem, int n0, const StrategySettings& settings) {
    AdaptiveState state = make_initial_state(problem, n0);
    while (!state.converged && !state.budget_exhausted)
        state = step(problem, std::move(state), settings);
    return state;
}

bool precheck_model(const Problem& problem, double eps, double delta,
                    const StrategySettings& settings) {
    const ModelPair model = current_model(problem, eps);
    if (model.exact_model()) return true;
    if (delta <= 0.0) return false;

    const EstimatorSettings& es = settings.estimator;
    const TriangleMesh integration_mesh = build_structured_square(es.integration_n);
    const SubdivisionHint hint = model_pair_hint(model, eps, es.resolve_factor);

    const auto [alpha, beta] = spectral_bounds(model.simplified, integration_mesh, es.quad_order);
    const double C_P = laplace_constant_bound(es.P, 2, es.C_L);
    const ExponentSelection sel = select_exponents(es.P, alpha, beta, C_P, es.policy);

    const MatrixField b_field = make_B_eps(model.exact, model.simplified);
    const double B_ppp =
        field_norm(b_field, sel.p_pp, sel.p, integration_mesh, es.quad_order, hint);
    RegularityInputs reg_p{alpha, beta, es.P, sel.p, es.C_L, 2};
    const double c_reg_p = c_reg(reg_p, C_P);
    const double f_p = f_norm(problem.f, sel.p, integration_mesh, es.quad_order);

    return std::sqrt(B_ppp) * c_reg_p * f_p <= 0.5 * delta;
}

}  // namespace modisc
