#ifndef MODISC_STRATEGY_HPP
#define MODISC_STRATEGY_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modisc/estimator.hpp"

namespace modisc {

/// One problem instance: the exact coefficient, the family of simplified
/// coefficients indexed by eps (eps = 0 must return a field equal to A0),
/// the load, and an optional manufactured gradient for true-error reporting.
struct Problem {
    std::string name;
    CoefficientField a0;
    std::function<CoefficientField(double)> simplify;
    ScalarField f;
    double eps0 = 0.0;  // 0 selects the exact model throughout
    std::optional<std::function<Vec2(const Vec2&)>> exact_gradient;
};

struct StrategySettings {
    double delta = 0.1;   // target tolerance for total_combined
    int budget = 20;      // max adaptive steps
    int flux_iters = 5;   // majorant minimization sweeps per step
    double cg_tol = 1e-10;
    EstimatorSettings estimator;
};

/// Mutable loop state. The mesh grows strictly on refinement and eps
/// decreases strictly on sharpening; one ErrorReport is appended per step.
struct AdaptiveState {
    std::shared_ptr<const TriangleMesh> mesh;
    double eps = 0.0;
    ModelPair model;
    bool converged = false;
    bool budget_exhausted = false;
    std::vector<ErrorReport> history;
    FeFunction last_solution;  // lives on `mesh`
};

AdaptiveState make_initial_state(const Problem& problem, int n0);

/// Solves on the current (mesh, A_eps), minimizes the majorant, appends the
/// report, and either stops (total <= delta), refines the mesh (when
/// disc_bound >= mod_bound), or halves eps. Throws std::logic_error when the
/// budget is already exhausted.
AdaptiveState step(const Problem& problem, AdaptiveState state, const StrategySettings& settings);

/// Runs step() until convergence or budget exhaustion.
AdaptiveState run_strategy(const Problem& problem, int n0, const StrategySettings& settings);

/// True iff the discretization-independent modelling term of the two-term
/// bound is at most delta/2, so mesh refinement alone can reach delta.
bool precheck_model(const Problem& problem, double eps, double delta,
                    const StrategySettings& settings);

}  // namespace modisc

#endif
