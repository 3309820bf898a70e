#include "modisc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace modisc {

namespace {

TriQuadRule make_rule_1() {
    return {1, {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0}}};
}

TriQuadRule make_rule_2() {
    const double a = 2.0 / 3.0, b = 1.0 / 6.0, w = 1.0 / 3.0;
    return {2, {{a, b, b, w}, {b, a, b, w}, {b, b, a, w}}};
}

void push_sym3(std::vector<TriQuadPoint>& pts, double a, double w) {
    const double b = 1.0 - 2.0 * a;
    pts.push_back({b, a, a, w});
    pts.push_back({a, b, a, w});
    pts.push_back({a, a, b, w});
}

TriQuadRule make_rule_4() {
    // Dunavant degree 4, 6 points
    std::vector<TriQuadPoint> pts;
    push_sym3(pts, 0.445948490915965, 0.223381589678011);
    push_sym3(pts, 0.091576213509771, 0.109951743655322);
    return {4, std::move(pts)};
}

TriQuadRule make_rule_5() {
    // Dunavant degree 5, 7 points
    std::vector<TriQuadPoint> pts;
    pts.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225});
    const double s15 = std::sqrt(15.0);
    push_sym3(pts, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
    push_sym3(pts, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
    return {5, std::move(pts)};
}

}  // namespace

const TriQuadRule& tri_rule_for_order(int order) {
    static const TriQuadRule r1 = make_rule_1();
    static const TriQuadRule r2 = make_rule_2();
    static const TriQuadRule r4 = make_rule_4();
    static const TriQuadRule r5 = make_rule_5();
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    if (order <= 1) return r1;
    if (order <= 2) return r2;
    if (order <= 4) return r4;
    return r5;  // highest available rule
}

namespace {

void visit_recursive(const std::array<Vec2, 3>& tri, const TriQuadRule& rule,
                     const SubdivisionHint& hint, int depth,
                     const std::function<void(const Vec2&, double)>& fn) {
    if (hint.active() && depth < hint.max_depth && hint.needs_refine(tri)) {
        const Vec2 m01 = 0.5 * (tri[0] + tri[1]);
        const Vec2 m12 = 0.5 * (tri[1] + tri[2]);
        const Vec2 m20 = 0.5 * (tri[2] + tri[0]);
        visit_recursive({tri[0], m01, m20}, rule, hint, depth + 1, fn);
        visit_recursive({m01, tri[1], m12}, rule, hint, depth + 1, fn);
        visit_recursive({m20, m12, tri[2]}, rule, hint, depth + 1, fn);
        visit_recursive({m01, m12, m20}, rule, hint, depth + 1, fn);
        return;
    }
    const double area = std::abs(triangle_signed_area(tri[0], tri[1], tri[2]));
    for (const auto& q : rule.points) {
        const Vec2 x = q.l1 * tri[0] + q.l2 * tri[1] + q.l3 * tri[2];
        fn(x, q.w * area);
    }
}

}  // namespace

void for_each_quad_point(const std::array<Vec2, 3>& tri, const TriQuadRule& rule,
                         const SubdivisionHint& hint,
                         const std::function<void(const Vec2&, double)>& fn) {
    visit_recursive(tri, rule, hint, 0, fn);
}

SubdivisionHint circle_band_hint(Vec2 center, std::vector<double> radii, double resolve_h,
                                 int max_depth) {
    SubdivisionHint hint;
    hint.max_depth = max_depth;
    hint.needs_refine = [center, radii = std::move(radii),
                         resolve_h](const std::array<Vec2, 3>& tri) {
        const double h = triangle_diameter(tri[0], tri[1], tri[2]);
        if (h <= resolve_h) return false;
        double dmin = norm2(tri[0] - center), dmax = dmin;
        for (int i = 1; i < 3; ++i) {
            const double d = norm2(tri[i] - center);
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        for (double r : radii) {
            // conservative crossing test
            if (dmin - h <= r && r <= dmax + h) return true;
        }
        return false;
    };
    return hint;
}

}  // namespace modisc
