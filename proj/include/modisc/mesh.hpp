#ifndef MODISC_MESH_HPP
#define MODISC_MESH_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "modisc/geometry.hpp"

namespace modisc {

/// Conforming triangulation of a polygonal domain. Immutable after
/// construction; refinement produces a new mesh. Triangles are stored
/// counterclockwise and must have strictly positive signed area.
class TriangleMesh {
  public:
    TriangleMesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles,
                 std::vector<bool> boundary_vertex_flags);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_triangles() const { return static_cast<int>(triangles_.size()); }

    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    const std::vector<bool>& boundary_flags() const { return boundary_flags_; }

    const Vec2& vertex(int v) const { return vertices_[v]; }
    const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
    bool is_boundary_vertex(int v) const { return boundary_flags_[v]; }

    std::array<Vec2, 3> triangle_vertices(int t) const {
        const auto& tri = triangles_[t];
        return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
    }

    /// Domain diameter (bounding-box diagonal; exact for rectangles and an
    /// upper bound in general, which is the safe direction for C_F).
    double diameter() const { return diameter_; }

    double total_area() const { return total_area_; }
    double max_element_diameter() const { return max_elem_diameter_; }

  private:
    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<bool> boundary_flags_;
    double diameter_ = 0.0;
    double total_area_ = 0.0;
    double max_elem_diameter_ = 0.0;
};

/// Affine element data: area and the constant gradients of the three
/// barycentric basis functions (they sum to zero).
struct ElementGeometry {
    double area;
    std::array<Vec2, 3> grad;
};

/// n x n grid of squares on the unit square, each split into two triangles.
TriangleMesh build_structured_square(int n);

/// Red refinement: every triangle is split into 4 congruent children through
/// its edge midpoints; conformity is preserved.
TriangleMesh refine_uniform(const TriangleMesh& mesh);

/// Red refinement together with the provenance of the new vertices: entry k
/// lists the parent edge endpoints of vertex (old_nv + k). Parent vertices
/// keep their indices, which makes nested P1 prolongation exact.
struct RefinedMesh {
    TriangleMesh mesh;
    std::vector<std::array<int, 2>> midpoint_parents;
};
RefinedMesh refine_uniform_with_map(const TriangleMesh& mesh);

ElementGeometry element_geometry(const TriangleMesh& mesh, int t);

/// Text format: "nv nt" header, then nv lines "x y bflag", then nt lines
/// "i j k" (0-based). Coordinates use 17 significant digits so that a
/// write/read round trip is bit exact.
void write_mesh(const TriangleMesh& mesh, std::ostream& out);
TriangleMesh read_mesh(std::istream& in);

void write_mesh_file(const TriangleMesh& mesh, const std::string& path);
TriangleMesh read_mesh_file(const std::string& path);

}  // namespace modisc

#endif
