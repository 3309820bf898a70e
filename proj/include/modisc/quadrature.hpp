#ifndef MODISC_QUADRATURE_HPP
#define MODISC_QUADRATURE_HPP

#include <array>
#include <functional>
#include <vector>

#include "modisc/geometry.hpp"

namespace modisc {

/// Barycentric quadrature point (l1, l2, l3) with weight w; weights sum to 1
/// so that integral over T = |T| * sum w_q f(x_q).
struct TriQuadPoint {
    double l1, l2, l3, w;
};

struct TriQuadRule {
    int degree;  // highest polynomial degree integrated exactly
    std::vector<TriQuadPoint> points;
};

/// Symmetric Gauss rules on the triangle (degrees 1, 2, 4, 5).
const TriQuadRule& tri_rule_for_order(int order);

/// Predicate-driven subdivision control for integrating fields with localized
/// non-smooth features (e.g. coefficient strips much thinner than elements).
struct SubdivisionHint {
    // Return true if the triangle should be split further.
    std::function<bool(const std::array<Vec2, 3>&)> needs_refine;
    int max_depth = 0;

    bool active() const { return max_depth > 0 && needs_refine; }
};

/// Visits the quadrature points of a triangle, recursively subdividing while
/// the hint asks for it. fn receives (point, weight) where the weights sum to
/// the triangle area.
void for_each_quad_point(const std::array<Vec2, 3>& tri, const TriQuadRule& rule,
                         const SubdivisionHint& hint,
                         const std::function<void(const Vec2&, double)>& fn);

inline void for_each_quad_point(const std::array<Vec2, 3>& tri, const TriQuadRule& rule,
                                const std::function<void(const Vec2&, double)>& fn) {
    for_each_quad_point(tri, rule, SubdivisionHint{}, fn);
}

/// Hint that refines triangles crossing any of the given circles until their
/// diameter drops below resolve_h.
SubdivisionHint circle_band_hint(Vec2 center, std::vector<double> radii, double resolve_h,
                                 int max_depth = 24);

}  // namespace modisc

#endif
