#ifndef MODISC_COEFF_HPP
#define MODISC_COEFF_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "modisc/geometry.hpp"
#include "modisc/mesh.hpp"
#include "modisc/quadrature.hpp"

namespace modisc {

using MatrixField = std::function<SymMat2(const Vec2&)>;
using ScalarField = std::function<double(const Vec2&)>;

/// Jump disc with an optional smoothing strip: diffusivity k_in inside the
/// disc of the given radius, k_out outside, blended affinely in r over a strip
/// of width eps around the interface circle (eps = 0 is the sharp jump).
struct JumpDiscSpec {
    Vec2 center{0.5, 0.5};
    double radius = 0.3;
    double k_in = 1.0;
    double k_out = 1.0;
    double eps = 0.0;

    void validate() const;

    /// kappa as a function of the distance r to the center. On the interface
    /// circle itself the sharp jump takes the outside value.
    double kappa(double r) const;
};

struct CheckerboardSpec {
    int cells = 2;
    double k1 = 1.0;
    double k2 = 1.0;

    void validate() const;
};

enum class CoeffKind { Exact, Simplified };

/// Symmetric 2x2 matrix coefficient on the unit square. Evaluators are pure
/// functions; all norm computations below are read-only.
struct CoefficientField {
    MatrixField eval;
    CoeffKind kind = CoeffKind::Exact;
    std::optional<std::pair<double, double>> analytic_bounds;  // (alpha, beta)
    std::optional<JumpDiscSpec> disc_info;  // set for the disc family
    std::string description;

    SymMat2 operator()(const Vec2& x) const { return eval(x); }
};

CoefficientField make_constant_coefficient(double kappa);
CoefficientField make_disc_coefficient(const JumpDiscSpec& spec);          // eps == 0
CoefficientField smooth_disc_coefficient(const JumpDiscSpec& spec);       // eps > 0
CoefficientField make_checkerboard_coefficient(const CheckerboardSpec& spec);

/// Mixed l^p -> l^{p'} matrix norm m = sup_zeta ||M zeta||_{p'} / ||zeta||_p
/// for p >= 2, computed by a 4096-sample angular scan followed by
/// golden-section refinement. For p = 2 this is the spectral norm.
double matrix_mixed_norm(const SymMat2& m, double p);

/// Outer L^s Lebesgue norm of x -> matrix_mixed_norm(M(x), p) over the mesh,
/// by per-element Gauss quadrature of the given order (s = infinity returns
/// the maximum over quadrature points). The optional hint subdivides elements
/// near known non-smooth features before applying the rule.
double field_norm(const MatrixField& m, double s, double p, const TriangleMesh& mesh,
                  int quad_order, const SubdivisionHint& hint = {});

/// Pointwise B_eps = (A_eps - A0) A0^{-1} (A_eps - A0); symmetric PSD.
MatrixField make_B_eps(const CoefficientField& a0, const CoefficientField& aeps);

/// Pointwise D_eps = A_eps^{-1/2} A0 A_eps^{-1/2}; symmetric PD.
MatrixField make_D_eps(const CoefficientField& a0, const CoefficientField& aeps);

/// A pair (A0, A_eps) plus the structure shared by the two fields, when any.
struct ModelPair {
    CoefficientField exact;
    CoefficientField simplified;

    /// True when A_eps equals A0 (same constant, or the disc family at eps=0).
    bool exact_model() const;

    /// Set when both fields belong to one disc family (same geometry and
    /// diffusivities); value is the strip width of the simplified field.
    std::optional<double> disc_family_eps() const;

    /// Radii of the circles across which either coefficient is non-smooth.
    std::vector<double> nonsmooth_radii() const;
};

ModelPair make_model_pair(CoefficientField a0, CoefficientField aeps);

/// |||D_eps|||_{inf,Omega}. For the disc family this reduces to a 1-D
/// maximization over the radius (one-sided at the jump circle); for general
/// pairs the maximum over quadrature points of the mesh is inflated by 1%
/// (reported through `sampled`).
double sup_D_eps(const ModelPair& pair, const TriangleMesh& integration_mesh, int quad_order,
                 bool* sampled = nullptr);

/// L^q norm over Omega of the pointwise spectral norm of A0 - A_eps.
double coefficient_difference_norm(const ModelPair& pair, double q,
                                   const TriangleMesh& integration_mesh, int quad_order,
                                   const SubdivisionHint& hint = {});

/// Spectral bounds (alpha, beta) of a coefficient: analytic when declared,
/// otherwise sampled over quadrature points with a 1% safety margin
/// (alpha deflated, beta inflated); `sampled` reports which route was taken.
std::pair<double, double> spectral_bounds(const CoefficientField& a,
                                          const TriangleMesh& integration_mesh, int quad_order,
                                          bool* sampled = nullptr);

}  // namespace modisc

#endif
