#include "modisc/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "modisc/quadrature.hpp"

namespace modisc {

Vec2 FeFunction::element_gradient(int t) const {
    const ElementGeometry g = element_geometry(*mesh, t);
    const auto& tri = mesh->triangle(t);
    Vec2 grad{0.0, 0.0};
    for (int k = 0; k < 3; ++k) grad = grad + nodal_values[tri[k]] * g.grad[k];
    return grad;
}

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc += val[k] * x[col[k]];
        y[i] = acc;
    }
}

double CsrMatrix::max_relative_asymmetry() const {
    double scale = 0.0;
    for (double v : val) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            const int j = col[k];
            double vji = 0.0;
            for (int k2 = row_ptr[j]; k2 < row_ptr[j + 1]; ++k2)
                if (col[k2] == i) {
                    vji = val[k2];
                    break;
                }
            worst = std::max(worst, std::abs(val[k] - vji));
        }
    }
    return worst / scale;
}

namespace {

CsrMatrix compress_rows(std::vector<std::vector<std::pair<int, double>>>& rows) {
    CsrMatrix m;
    m.n = static_cast<int>(rows.size());
    m.row_ptr.assign(m.n + 1, 0);
    for (int i = 0; i < m.n; ++i) {
        auto& r = rows[i];
        std::sort(r.begin(), r.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
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
    m.col.reserve(m.row_ptr[m.n]);
    m.val.reserve(m.row_ptr[m.n]);
    for (const auto& r : rows)
        for (const auto& [c, v] : r) {
            m.col.push_back(c);
            m.val.push_back(v);
        }
    return m;
}

}  // namespace

SparseSystem assemble(const TriangleMesh& mesh, const CoefficientField& a, const ScalarField& f,
                      int quad_order) {
    const int nv = mesh.num_vertices();
    std::vector<int> vertex_to_interior(nv, -1);
    SparseSystem sys;
    sys.mesh = &mesh;
    for (int v = 0; v < nv; ++v) {
        if (!mesh.is_boundary_vertex(v)) {
            vertex_to_interior[v] = static_cast<int>(sys.interior_to_vertex.size());
            sys.interior_to_vertex.push_back(v);
        }
    }
    const int n = static_cast<int>(sys.interior_to_vertex.size());
    std::vector<std::vector<std::pair<int, double>>> rows(n);
    sys.rhs.assign(n, 0.0);
    const TriQuadRule& rule = tri_rule_for_order(quad_order);

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        if (!(g.area > 0.0)) throw std::invalid_argument("assemble: degenerate element");
        const auto& tri = mesh.triangle(t);
        const auto pts = mesh.triangle_vertices(t);

        // element average of A (weights sum to the area)
        SymMat2 a_int = SymMat2::zero();
        std::array<double, 3> load{0.0, 0.0, 0.0};
        for (const auto& q : rule.points) {
            const Vec2 x = q.l1 * pts[0] + q.l2 * pts[1] + q.l3 * pts[2];
            const double w = q.w * g.area;
            a_int = a_int + a.eval(x) * w;
            const double fx = f(x);
            load[0] += w * fx * q.l1;
            load[1] += w * fx * q.l2;
            load[2] += w * fx * q.l3;
        }

        for (int i = 0; i < 3; ++i) {
            const int vi = tri[i];
            const int ui = vertex_to_interior[vi];
            if (ui < 0) continue;
            sys.rhs[ui] += load[i];
            const Vec2 agi = a_int.apply(g.grad[i]);
            for (int j = 0; j < 3; ++j) {
                const int uj = vertex_to_interior[tri[j]];
                if (uj < 0) continue;
                rows[ui].push_back({uj, dot(agi, g.grad[j])});
            }
        }
    }
    sys.matrix = compress_rows(rows);
    return sys;
}

std::vector<double> pcg_solve(const CsrMatrix& m, const std::vector<double>& rhs,
                              std::vector<double> x, double rel_tol) {
    const int n = m.n;
    std::vector<double> diag(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k)
            if (m.col[k] == i && m.val[k] != 0.0) diag[i] = m.val[k];

    std::vector<double> r(n), z(n), p(n), q(n);
    if (x.empty()) x.assign(n, 0.0);
    m.multiply(x, q);
    double rhs_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        r[i] = rhs[i] - q[i];
        rhs_norm += rhs[i] * rhs[i];
    }
    rhs_norm = std::sqrt(rhs_norm);
    if (rhs_norm == 0.0) return std::vector<double>(n, 0.0);
    const double target = rel_tol * rhs_norm;

    auto res_norm = [&]() {
        double acc = 0.0;
        for (double v : r) acc += v * v;
        return std::sqrt(acc);
    };
    if (res_norm() <= target) return x;

    double rho = 0.0;
    for (int i = 0; i < n; ++i) {
        z[i] = r[i] / diag[i];
        rho += r[i] * z[i];
    }
    p = z;

    const long max_iter = 10L * n;
    for (long it = 0; it < max_iter; ++it) {
        m.multiply(p, q);
        double pq = 0.0;
        for (int i = 0; i < n; ++i) pq += p[i] * q[i];
        if (pq == 0.0) break;
        const double alpha = rho / pq;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        if (res_norm() <= target) return x;
        double rho_new = 0.0;
        for (int i = 0; i < n; ++i) {
            z[i] = r[i] / diag[i];
            rho_new += r[i] * z[i];
        }
        const double beta = rho_new / rho;
        rho = rho_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    if (res_norm() <= target) return x;
    throw NonconvergenceError("pcg_solve: iteration cap (10n) exceeded");
}

FeFunction solve_cg(const SparseSystem& sys, double rel_tol) {
    const std::vector<double> x = pcg_solve(sys.matrix, sys.rhs, {}, rel_tol);
    FeFunction u;
    u.mesh = sys.mesh;
    u.nodal_values.assign(sys.mesh->num_vertices(), 0.0);
    for (size_t k = 0; k < sys.interior_to_vertex.size(); ++k)
        u.nodal_values[sys.interior_to_vertex[k]] = x[k];
    return u;
}

double grad_norm(const FeFunction& u, double p, const CoefficientField* weight, int quad_order) {
    const TriangleMesh& mesh = *u.mesh;
    const int nt = mesh.num_triangles();

    if (weight) {
        if (p != 2.0)
            throw std::invalid_argument("grad_norm: weighted norms are L2-type (p must be 2)");
        const TriQuadRule& rule = tri_rule_for_order(quad_order);
        double acc = 0.0;
        for (int t = 0; t < nt; ++t) {
            const Vec2 gr = u.element_gradient(t);
            for_each_quad_point(mesh.triangle_vertices(t), rule, [&](const Vec2& x, double w) {
                acc += w * dot(weight->eval(x).apply(gr), gr);
            });
        }
        return std::sqrt(acc);
    }

    if (std::isinf(p)) {
        double best = 0.0;
        for (int t = 0; t < nt; ++t)
            best = std::max(best, lp_norm(u.element_gradient(t), p));
        return best;
    }
    double acc = 0.0;
    for (int t = 0; t < nt; ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        acc += g.area * std::pow(lp_norm(u.element_gradient(t), p), p);
    }
    return std::pow(acc, 1.0 / p);
}

double f_norm(const ScalarField& f, double t, const TriangleMesh& mesh, int quad_order) {
    if (!(t >= 1.0) || std::isinf(t)) throw std::invalid_argument("f_norm: need t in [1, inf)");
    const TriQuadRule& rule = tri_rule_for_order(quad_order);
    double acc = 0.0;
    for (int e = 0; e < mesh.num_triangles(); ++e) {
        for_each_quad_point(mesh.triangle_vertices(e), rule, [&](const Vec2& x, double w) {
            acc += w * std::pow(std::abs(f(x)), t);
        });
    }
    return std::pow(acc, 1.0 / t);
}

double energy_error_against(const FeFunction& u, const std::function<Vec2(const Vec2&)>& g,
                            const CoefficientField* weight, int quad_order,
                            const SubdivisionHint& hint) {
    const TriangleMesh& mesh = *u.mesh;
    const TriQuadRule& rule = tri_rule_for_order(quad_order);
    double acc = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const Vec2 gh = u.element_gradient(t);
        for_each_quad_point(mesh.triangle_vertices(t), rule, hint, [&](const Vec2& x, double w) {
            const Vec2 d = g(x) - gh;
            acc += w * (weight ? dot(weight->eval(x).apply(d), d) : dot(d, d));
        });
    }
    return std::sqrt(acc);
}

FeFunction prolongate(const FeFunction& coarse, const RefinedMesh& refined) {
    FeFunction fine;
    fine.mesh = &refined.mesh;
    fine.nodal_values.assign(refined.mesh.num_vertices(), 0.0);
    const size_t ncoarse = coarse.nodal_values.size();
    for (size_t v = 0; v < ncoarse; ++v) fine.nodal_values[v] = coarse.nodal_values[v];
    for (size_t k = 0; k < refined.midpoint_parents.size(); ++k) {
        const auto& [a, b] = refined.midpoint_parents[k];
        fine.nodal_values[ncoarse + k] = 0.5 * (coarse.nodal_values[a] + coarse.nodal_values[b]);
    }
    return fine;
}

void write_fe_function(const FeFunction& u, std::ostream& out) {
    char buf[96];
    for (int v = 0; v < u.mesh->num_vertices(); ++v) {
        const Vec2& p = u.mesh->vertex(v);
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", p.x, p.y, u.nodal_values[v]);
        out << buf << '\n';
    }
}

void write_fe_function_file(const FeFunction& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_fe_function_file: cannot open " + path);
    write_fe_function(u, out);
}

}  // namespace modisc
