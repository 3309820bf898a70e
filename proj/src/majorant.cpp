#include "modisc/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "modisc/quadrature.hpp"

namespace modisc {

Vec2 FluxField::value(int t, const Vec2& x) const {
    const auto& tri = mesh->triangle(t);
    const auto p = mesh->triangle_vertices(t);
    const double area2 = 2.0 * triangle_signed_area(p[0], p[1], p[2]);
    const double l1 = ((p[1].x - x.x) * (p[2].y - x.y) - (p[1].y - x.y) * (p[2].x - x.x)) / area2;
    const double l2 = ((p[2].x - x.x) * (p[0].y - x.y) - (p[2].y - x.y) * (p[0].x - x.x)) / area2;
    const double l3 = 1.0 - l1 - l2;
    return l1 * nodal_vectors[tri[0]] + l2 * nodal_vectors[tri[1]] + l3 * nodal_vectors[tri[2]];
}

double FluxField::element_divergence(int t) const {
    const ElementGeometry g = element_geometry(*mesh, t);
    const auto& tri = mesh->triangle(t);
    double div = 0.0;
    for (int k = 0; k < 3; ++k) div += dot(g.grad[k], nodal_vectors[tri[k]]);
    return div;
}

double combine_majorant(double a, double b, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("combine_majorant: gamma must be positive");
    return std::sqrt((1.0 + gamma) * a * a + (1.0 + 1.0 / gamma) * b * b);
}

FluxField reconstruct_flux_averaging(const FeFunction& u, const CoefficientField& a,
                                     int quad_order) {
    const TriangleMesh& mesh = *u.mesh;
    const TriQuadRule& rule = tri_rule_for_order(quad_order);
    FluxField y;
    y.mesh = &mesh;
    y.nodal_vectors.assign(mesh.num_vertices(), Vec2{0.0, 0.0});
    std::vector<double> weight(mesh.num_vertices(), 0.0);

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const Vec2 gr = u.element_gradient(t);
        // quadrature mean of A over the element, applied to the element gradient
        SymMat2 a_mean = SymMat2::zero();
        for_each_quad_point(mesh.triangle_vertices(t), rule,
                            [&](const Vec2& x, double w) { a_mean = a_mean + a.eval(x) * w; });
        const Vec2 flux = a_mean.apply(gr) * (1.0 / g.area);
        const auto& tri = mesh.triangle(t);
        for (int k = 0; k < 3; ++k) {
            y.nodal_vectors[tri[k]] = y.nodal_vectors[tri[k]] + g.area * flux;
            weight[tri[k]] += g.area;
        }
    }
    for (int v = 0; v < mesh.num_vertices(); ++v)
        y.nodal_vectors[v] = y.nodal_vectors[v] * (1.0 / weight[v]);
    return y;
}

namespace {

struct MajorantTerms {
    double a2 = 0.0;  // ||A grad u - y||^2_{A^{-1}}
    double b2 = 0.0;  // ||div y + f||^2_2
};

MajorantTerms majorant_terms(const FeFunction& u, const FluxField& y, const ScalarField& f,
                             const CoefficientField& a, int quad_order,
                             const SubdivisionHint& hint) {
    const TriangleMesh& mesh = *u.mesh;
    const TriQuadRule& rule = tri_rule_for_order(quad_order);
    MajorantTerms terms;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const Vec2 gr = u.element_gradient(t);
        const double div = y.element_divergence(t);
        for_each_quad_point(mesh.triangle_vertices(t), rule, hint, [&](const Vec2& x, double w) {
            const SymMat2 ax = a.eval(x);
            const Vec2 r = ax.apply(gr) - y.value(t, x);
            terms.a2 += w * dot(ax.inverse().apply(r), r);
            const double res = div + f(x);
            terms.b2 += w * res * res;
        });
    }
    return terms;
}

MajorantBreakdown breakdown_from_terms(const MajorantTerms& terms, std::optional<double> gamma_opt,
                                       double C_Omega) {
    MajorantBreakdown out;
    out.flux_term = std::sqrt(std::max(terms.a2, 0.0));
    out.residual_term = C_Omega * std::sqrt(std::max(terms.b2, 0.0));
    out.optimal_value = out.flux_term + out.residual_term;
    if (gamma_opt) {
        if (!(*gamma_opt > 0.0))
            throw std::invalid_argument("evaluate_majorant: gamma must be positive");
        out.gamma = *gamma_opt;
    } else {
        out.gamma = (out.flux_term > 0.0 && out.residual_term > 0.0)
                        ? out.residual_term / out.flux_term
                        : 1.0;
    }
    out.value = combine_majorant(out.flux_term, out.residual_term, out.gamma);
    return out;
}

}  // namespace

MajorantBreakdown evaluate_majorant(const FeFunction& u, const FluxField& y, const ScalarField& f,
                                    const CoefficientField& a, std::optional<double> gamma_opt,
                                    double C_Omega, int quad_order, const SubdivisionHint& hint) {
    return breakdown_from_terms(majorant_terms(u, y, f, a, quad_order, hint), gamma_opt, C_Omega);
}

namespace {

/// Pattern-shared CSR pair: the A^{-1}-weighted vector mass matrix and the
/// div-div matrix on nodal P1 vector fields (2 dofs per vertex, x then y
/// interleaved as 2v, 2v+1).
struct FluxMatrices {
    CsrMatrix mass;     // values of the weighted mass part
    CsrMatrix divdiv;   // same sparsity, div-div values
    std::vector<double> rhs_mass;  // integral of grad u_h against the basis
    std::vector<double> rhs_div;   // integral of f against basis divergences
};

FluxMatrices assemble_flux_system(const FeFunction& u, const ScalarField& f,
                                  const CoefficientField& a, int quad_order,
                                  const SubdivisionHint& hint) {
    const TriangleMesh& mesh = *u.mesh;
    const TriQuadRule& rule = tri_rule_for_order(quad_order);
    const int ndof = 2 * mesh.num_vertices();
    std::vector<std::vector<std::pair<int, double>>> rows_mass(ndof), rows_div(ndof);
    FluxMatrices fm;
    fm.rhs_mass.assign(ndof, 0.0);
    fm.rhs_div.assign(ndof, 0.0);

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const auto& tri = mesh.triangle(t);
        const auto pts = mesh.triangle_vertices(t);
        const Vec2 gr = u.element_gradient(t);

        // quadrature moments of A^{-1}: integral of A^{-1} phi_i phi_j and of
        // grad u_h against A^{-1}-weighted basis reduces to scalar moments
        std::array<std::array<SymMat2, 3>, 3> inv_moment{};
        std::array<double, 3> phi_int{0.0, 0.0, 0.0};
        double f_int = 0.0;
        for_each_quad_point(pts, rule, hint, [&](const Vec2& x, double w) {
            const SymMat2 inv = a.eval(x).inverse();
            const double area2 = 2.0 * g.area;
            const double l1 =
                ((pts[1].x - x.x) * (pts[2].y - x.y) - (pts[1].y - x.y) * (pts[2].x - x.x)) /
                area2;
            const double l2 =
                ((pts[2].x - x.x) * (pts[0].y - x.y) - (pts[2].y - x.y) * (pts[0].x - x.x)) /
                area2;
            const double l[3] = {l1, l2, 1.0 - l1 - l2};
            for (int i = 0; i < 3; ++i) {
                phi_int[i] += w * l[i];
                for (int j = 0; j < 3; ++j)
                    inv_moment[i][j] = inv_moment[i][j] + inv * (w * l[i] * l[j]);
            }
            f_int += w * f(x);
        });

        for (int i = 0; i < 3; ++i) {
            const int vi = tri[i];
            // rhs: (1+gamma) part uses integral of <grad u_h, e_b> phi_i
            fm.rhs_mass[2 * vi] += phi_int[i] * gr.x;
            fm.rhs_mass[2 * vi + 1] += phi_int[i] * gr.y;
            // rhs: divergence part, div(phi_i e_b) = grad_i[b]
            fm.rhs_div[2 * vi] += f_int * g.grad[i].x;
            fm.rhs_div[2 * vi + 1] += f_int * g.grad[i].y;
            for (int j = 0; j < 3; ++j) {
                const int vj = tri[j];
                const SymMat2& mij = inv_moment[i][j];
                rows_mass[2 * vi].push_back({2 * vj, mij.a11});
                rows_mass[2 * vi].push_back({2 * vj + 1, mij.a12});
                rows_mass[2 * vi + 1].push_back({2 * vj, mij.a12});
                rows_mass[2 * vi + 1].push_back({2 * vj + 1, mij.a22});
                const Vec2& gi = g.grad[i];
                const Vec2& gj = g.grad[j];
                rows_div[2 * vi].push_back({2 * vj, g.area * gi.x * gj.x});
                rows_div[2 * vi].push_back({2 * vj + 1, g.area * gi.x * gj.y});
                rows_div[2 * vi + 1].push_back({2 * vj, g.area * gi.y * gj.x});
                rows_div[2 * vi + 1].push_back({2 * vj + 1, g.area * gi.y * gj.y});
            }
        }
    }

    // Compress both with the same fill pattern so values can be combined.
    auto compress = [](std::vector<std::vector<std::pair<int, double>>>& rows) {
        CsrMatrix m;
        m.n = static_cast<int>(rows.size());
        m.row_ptr.assign(m.n + 1, 0);
        for (int i = 0; i < m.n; ++i) {
            auto& r = rows[i];
            std::sort(r.begin(), r.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            int unique = 0;
            for (size_t k = 0; k < r.size(); ++k) {
                if (unique > 0 && r[unique - 1].first == r[k].first)
                    r[unique - 1].second += r[k].second;
                else
                    r[unique++] = r[k];
            }
            r.resize(unique);
            m.row_ptr[i + 1] = m.row_ptr[i] + unique;
        }
        for (const auto& r : rows)
            for (const auto& [c, v] : r) {
                m.col.push_back(c);
                m.val.push_back(v);
            }
        return m;
    };
    fm.mass = compress(rows_mass);
    fm.divdiv = compress(rows_div);
    if (fm.mass.col != fm.divdiv.col)
        throw std::logic_error("assemble_flux_system: sparsity patterns diverged");
    return fm;
}

}  // namespace

MinimizeResult minimize_majorant(const FeFunction& u, const ScalarField& f,
                                 const CoefficientField& a, double C_Omega, int iters,
                                 int quad_order, const SubdivisionHint& hint, double cg_tol) {
    MinimizeResult result;
    result.flux = reconstruct_flux_averaging(u, a, quad_order);
    result.breakdown =
        evaluate_majorant(u, result.flux, f, a, std::nullopt, C_Omega, quad_order, hint);
    result.history.push_back(result.breakdown.optimal_value);
    if (iters <= 0) return result;

    const FluxMatrices fm = assemble_flux_system(u, f, a, quad_order, hint);
    const int ndof = fm.mass.n;
    std::vector<double> yvec(ndof);
    for (int v = 0; v < u.mesh->num_vertices(); ++v) {
        yvec[2 * v] = result.flux.nodal_vectors[v].x;
        yvec[2 * v + 1] = result.flux.nodal_vectors[v].y;
    }

    double gamma = result.breakdown.gamma;
    const double c2 = C_Omega * C_Omega;
    CsrMatrix k = fm.mass;  // reuse pattern; values rewritten per iteration
    std::vector<double> rhs(ndof);

    for (int it = 0; it < iters; ++it) {
        const double w_mass = 1.0 + gamma;
        const double w_div = (1.0 + 1.0 / gamma) * c2;
        for (size_t idx = 0; idx < k.val.size(); ++idx)
            k.val[idx] = w_mass * fm.mass.val[idx] + w_div * fm.divdiv.val[idx];
        for (int i = 0; i < ndof; ++i)
            rhs[i] = w_mass * fm.rhs_mass[i] - w_div * fm.rhs_div[i];

        yvec = pcg_solve(k, rhs, yvec, cg_tol);
        for (int v = 0; v < u.mesh->num_vertices(); ++v)
            result.flux.nodal_vectors[v] = {yvec[2 * v], yvec[2 * v + 1]};

        result.breakdown =
            evaluate_majorant(u, result.flux, f, a, std::nullopt, C_Omega, quad_order, hint);
        gamma = result.breakdown.gamma;
        result.history.push_back(result.breakdown.optimal_value);
    }
    return result;
}

}  // namespace modisc
