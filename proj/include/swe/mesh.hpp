#ifndef SWE_MESH_HPP
#define SWE_MESH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swe/geometry.hpp"

namespace swe {

/// Location of a point inside a triangulation: host element plus barycentric
/// weights (summing to one, each >= -1e-12).
struct BaryCoord {
  int element = -1;
  std::array<double, 3> lambda{};
};

struct BoundaryEdge {
  int a = -1;
  int b = -1;
  int label = 0; // 0 = Dirichlet, 1..255 = transmission segment id
};

/// Per-element geometry cached at construction: signed area (positive by the
/// CCW invariant) and the constant gradients of the three P1 basis functions.
struct ElementGeometry {
  double area = 0.0;
  std::array<Vec2, 3> grad{};
};

/// Immutable unstructured triangulation with a labeled boundary.
///
/// Triangles are counter-clockwise vertex triples. `neighbors[e][k]` is the
/// element across the edge opposite to local vertex k, or -1 on the boundary.
class TriMesh {
public:
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  std::vector<ElementGeometry> element_geometry;
  std::vector<std::array<int, 3>> neighbors;
  std::vector<std::vector<int>> vertex_star; // elements incident to each vertex

  /// Validates invariants and fills the derived tables. Throws GeometryError
  /// on negative/zero areas or a boundary that does not match the topology.
  void finalize();

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }

  /// Maximum element diameter.
  double max_diameter() const { return h_max_; }
  /// Total mesh area (sum of element areas).
  double total_area() const { return total_area_; }

  Vec2 centroid(int e) const {
    const auto& t = triangles[e];
    return (1.0 / 3.0) * (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]);
  }

  /// Barycentric coordinates of `x` with respect to element `e` (may be
  /// negative when x lies outside the element).
  std::array<double, 3> barycentric(int e, const Vec2& x) const;

  Vec2 point_at(const BaryCoord& bc) const {
    const auto& t = triangles[bc.element];
    return bc.lambda[0] * vertices[t[0]] + bc.lambda[1] * vertices[t[1]] +
           bc.lambda[2] * vertices[t[2]];
  }

private:
  double h_max_ = 0.0;
  double total_area_ = 0.0;
};

/// Reads a mesh in the SMF format:
///   smf 1
///   vertices <Nv>     followed by Nv lines "x y"
///   triangles <Nt>    followed by Nt lines "i j k"   (0-based, CCW)
///   boundary_edges <Nb>  followed by Nb lines "i j label"
/// Lines starting with '#' are comments.
TriMesh load_mesh(const std::string& path);

/// Writes `mesh` in the SMF format.
void save_mesh(const TriMesh& mesh, const std::string& path);

/// Boundary labels for the four sides of a generated square mesh.
struct SideLabels {
  int bottom = 0;
  int right = 0;
  int top = 0;
  int left = 0;
};

/// Structured triangulation of (0,side_length)^2 with N divisions per side
/// (2N^2 triangles, (N+1)^2 vertices). Interior vertices are jittered by a
/// deterministic seeded perturbation of at most perturbation*h/2 per
/// coordinate (h = side_length/N), which keeps every triangle CCW for
/// perturbation <= 0.3. Boundary vertices stay put.
TriMesh gen_square_mesh(double side_length, int N, double perturbation,
                        const SideLabels& labels = {}, std::uint64_t seed = 1);

/// Result of locate_point: `found == false` means the point is outside the
/// triangulation.
struct LocateResult {
  bool found = false;
  BaryCoord bc;
};

/// Finds the element containing `x`, walking from `hint` with a full-scan
/// fallback (the walk alone can fail on non-convex domains). Points on
/// shared edges resolve to the lowest element index. Reentrant.
LocateResult locate_point(const TriMesh& mesh, const Vec2& x, int hint = 0);

/// If x_to lies in the closed mesh domain returns it unchanged; otherwise
/// returns the first intersection of the segment [x_from, x_to] with the
/// boundary, nudged inward by 1e-12 * max_diameter along the segment.
/// x_from must lie in the closed domain.
Vec2 clip_to_boundary(const TriMesh& mesh, const Vec2& x_from, const Vec2& x_to);

/// Classification of boundary nodes and outward unit normals at transmission
/// nodes. Nodes touching both a Dirichlet and a transmission edge are
/// Dirichlet; normals at transmission nodes are length-weighted averages of
/// the adjacent transmission edge normals.
struct BoundaryPartition {
  std::vector<int> dirichlet_nodes;                // sorted
  std::map<int, std::vector<int>> transmission_nodes; // label -> sorted nodes
  std::map<int, Vec2> node_normals;                // per transmission node

  /// All transmission nodes over all labels, sorted, no duplicates.
  std::vector<int> all_transmission_nodes() const;
};

BoundaryPartition compute_boundary_normals(const TriMesh& mesh);

} // namespace swe

#endif
