#include "modisc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace modisc {

TriangleMesh::TriangleMesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                           std::vector<bool> boundary_vertex_flags)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_flags_(std::move(boundary_vertex_flags)) {
    if (vertices_.empty() || triangles_.empty())
        throw std::invalid_argument("TriangleMesh: empty vertex or triangle list");
    if (boundary_flags_.size() != vertices_.size())
        throw std::invalid_argument("TriangleMesh: boundary flag count mismatch");

    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& v : vertices_) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    diameter_ = std::hypot(xmax - xmin, ymax - ymin);

    const int nv = num_vertices();
    for (const auto& tri : triangles_) {
        for (int k = 0; k < 3; ++k)
            if (tri[k] < 0 || tri[k] >= nv)
                throw std::invalid_argument("TriangleMesh: vertex index out of range");
        const double a = triangle_signed_area(vertices_[tri[0]], vertices_[tri[1]],
                                              vertices_[tri[2]]);
        if (!(a > 0.0))
            throw std::invalid_argument("TriangleMesh: nonpositive triangle area");
        total_area_ += a;
        max_elem_diameter_ = std::max(
            max_elem_diameter_,
            triangle_diameter(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]));
    }
}

TriangleMesh build_structured_square(int n) {
    if (n < 1) throw std::invalid_argument("build_structured_square: n must be >= 1");
    const int nv1 = n + 1;
    std::vector<Vec2> verts;
    verts.reserve(static_cast<size_t>(nv1) * nv1);
    std::vector<bool> bflag;
    bflag.reserve(verts.capacity());
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            verts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
            bflag.push_back(i == 0 || i == n || j == 0 || j == n);
        }
    }
    std::vector<std::array<int, 3>> tris;
    tris.reserve(2 * static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = j * nv1 + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + nv1;
            const int v11 = v01 + 1;
            tris.push_back({v00, v10, v11});
            tris.push_back({v00, v11, v01});
        }
    }
    return TriangleMesh(std::move(verts), std::move(tris), std::move(bflag));
}

RefinedMesh refine_uniform_with_map(const TriangleMesh& mesh) {
    const int nv = mesh.num_vertices();
    std::vector<Vec2> verts = mesh.vertices();
    std::vector<bool> bflag = mesh.boundary_flags();
    std::vector<std::array<int, 2>> parents;

    // count how many triangles share each undirected edge
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : mesh.triangles()) {
        for (int k = 0; k < 3; ++k) {
            int a = tri[k], b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }

    std::map<std::pair<int, int>, int> midpoint;
    auto midpoint_of = [&](int a, int b) {
        int lo = std::min(a, b), hi = std::max(a, b);
        auto it = midpoint.find({lo, hi});
        if (it != midpoint.end()) return it->second;
        const int idx = static_cast<int>(verts.size());
        verts.push_back(0.5 * (mesh.vertex(lo) + mesh.vertex(hi)));
        // a midpoint is a boundary vertex iff its edge belongs to one triangle only
        bflag.push_back(edge_count.at({lo, hi}) == 1);
        parents.push_back({lo, hi});
        midpoint[{lo, hi}] = idx;
        return idx;
    };

    std::vector<std::array<int, 3>> tris;
    tris.reserve(4 * static_cast<size_t>(mesh.num_triangles()));
    for (const auto& tri : mesh.triangles()) {
        const int a = tri[0], b = tri[1], c = tri[2];
        const int mab = midpoint_of(a, b);
        const int mbc = midpoint_of(b, c);
        const int mca = midpoint_of(c, a);
        tris.push_back({a, mab, mca});
        tris.push_back({mab, b, mbc});
        tris.push_back({mca, mbc, c});
        tris.push_back({mab, mbc, mca});
    }
    (void)nv;
    return {TriangleMesh(std::move(verts), std::move(tris), std::move(bflag)),
            std::move(parents)};
}

TriangleMesh refine_uniform(const TriangleMesh& mesh) {
    return refine_uniform_with_map(mesh).mesh;
}

ElementGeometry element_geometry(const TriangleMesh& mesh, int t) {
    if (t < 0 || t >= mesh.num_triangles())
        throw std::out_of_range("element_geometry: triangle index out of range");
    const auto p = mesh.triangle_vertices(t);
    const double area = triangle_signed_area(p[0], p[1], p[2]);
    const double inv = 1.0 / (2.0 * area);
    ElementGeometry g;
    g.area = area;
    g.grad[0] = {(p[1].y - p[2].y) * inv, (p[2].x - p[1].x) * inv};
    g.grad[1] = {(p[2].y - p[0].y) * inv, (p[0].x - p[2].x) * inv};
    g.grad[2] = {(p[0].y - p[1].y) * inv, (p[1].x - p[0].x) * inv};
    return g;
}

void write_mesh(const TriangleMesh& mesh, std::ostream& out) {
    out << mesh.num_vertices() << ' ' << mesh.num_triangles() << '\n';
    char buf[64];
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const Vec2& p = mesh.vertex(v);
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %d", p.x, p.y,
                      mesh.is_boundary_vertex(v) ? 1 : 0);
        out << buf << '\n';
    }
    for (const auto& tri : mesh.triangles())
        out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
}

TriangleMesh read_mesh(std::istream& in) {
    int nv = 0, nt = 0;
    if (!(in >> nv >> nt)) throw std::runtime_error("read_mesh: bad header");
    std::vector<Vec2> verts(nv);
    std::vector<bool> bflag(nv);
    for (int v = 0; v < nv; ++v) {
        int flag = 0;
        if (!(in >> verts[v].x >> verts[v].y >> flag))
            throw std::runtime_error("read_mesh: bad vertex line");
        bflag[v] = flag != 0;
    }
    std::vector<std::array<int, 3>> tris(nt);
    for (int t = 0; t < nt; ++t)
        if (!(in >> tris[t][0] >> tris[t][1] >> tris[t][2]))
            throw std::runtime_error("read_mesh: bad triangle line");
    return TriangleMesh(std::move(verts), std::move(tris), std::move(bflag));
}

void write_mesh_file(const TriangleMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_mesh_file: cannot open " + path);
    write_mesh(mesh, out);
}

TriangleMesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_mesh_file: cannot open " + path);
    return read_mesh(in);
}

}  // namespace modisc
