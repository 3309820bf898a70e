#ifndef MODISC_FEM_HPP
#define MODISC_FEM_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "modisc/coeff.hpp"
#include "modisc/mesh.hpp"

namespace modisc {

/// P1 nodal scalar field on a mesh. Trial-space members carry exact zeros on
/// boundary-flagged vertices (homogeneous Dirichlet).
struct FeFunction {
    const TriangleMesh* mesh = nullptr;
    std::vector<double> nodal_values;

    Vec2 element_gradient(int t) const;
};

struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    double max_relative_asymmetry() const;
};

/// Galerkin system on the interior (non-Dirichlet) unknowns.
struct SparseSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    std::vector<int> interior_to_vertex;  // unknown index -> mesh vertex
    const TriangleMesh* mesh = nullptr;
};

struct NonconvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stiffness and load assembly for -div(A grad u) = f with homogeneous
/// Dirichlet data. P1 gradients are constant per element, so the quadrature
/// is applied to A (and to f phi_i for the load).
SparseSystem assemble(const TriangleMesh& mesh, const CoefficientField& a, const ScalarField& f,
                      int quad_order);

/// Jacobi-preconditioned conjugate gradients until the relative residual
/// drops below rel_tol; throws NonconvergenceError after 10 * n iterations.
/// Boundary zeros are reinstated in the returned nodal field.
FeFunction solve_cg(const SparseSystem& sys, double rel_tol = 1e-10);

/// Raw PCG on an explicit SPD matrix (used by the flux minimizer as well).
std::vector<double> pcg_solve(const CsrMatrix& m, const std::vector<double>& rhs,
                              std::vector<double> x0, double rel_tol);

/// L^p norm of the piecewise-constant gradient, with the l^p vector norm
/// inside (exact elementwise sums; p = infinity gives the max). A weight
/// turns the p = 2 case into the A-energy norm, integrated by quadrature.
double grad_norm(const FeFunction& u, double p, const CoefficientField* weight = nullptr,
                 int quad_order = 5);

/// ||f||_{t,Omega} by per-element quadrature.
double f_norm(const ScalarField& f, double t, const TriangleMesh& mesh, int quad_order);

/// Energy norm ||grad u_h - g||_A against an analytic gradient g, by
/// quadrature (A = identity when weight is null).
double energy_error_against(const FeFunction& u, const std::function<Vec2(const Vec2&)>& g,
                            const CoefficientField* weight, int quad_order,
                            const SubdivisionHint& hint = {});

/// Nested P1 prolongation along a refinement map (exact embedding).
FeFunction prolongate(const FeFunction& coarse, const RefinedMesh& refined);

/// Text export: one "x y value" line per vertex.
void write_fe_function(const FeFunction& u, std::ostream& out);
void write_fe_function_file(const FeFunction& u, const std::string& path);

}  // namespace modisc

#endif
