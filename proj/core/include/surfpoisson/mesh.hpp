#pragma once

#include <array>
#include <vector>

#include "surfpoisson/geometry.hpp"

namespace surfpoisson {

/// Oriented boundary edge (v0 -> v1 counterclockwise along dU) with its unit
/// outward normal and the boundary parameters of both endpoints.
struct BoundaryEdge {
  int v0 = -1;
  int v1 = -1;
  Vec2 normal = Vec2::Zero();
  double s0 = 0.0;
  double s1 = 0.0;
};

/// Triangulation of the parameter domain. Triangles are counterclockwise;
/// boundary edges form one closed loop; boundary vertices sit on dU.
struct ParamMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<bool> boundary_vertex_flags;
  /// Boundary parameter per vertex; NaN for interior vertices.
  std::vector<double> boundary_params;
  double h_target = 0.0;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  std::vector<int> boundary_vertices() const;
};

/// Structured polar / elliptic-annulus mesh with all boundary vertices placed
/// exactly on dU. Throws MeshFailure if the quality targets (max edge <= 1.5h,
/// min angle >= 20 degrees) cannot be met.
ParamMesh generate_mesh(const DomainSpec& domain, double h);

/// Uniform 1->4 refinement; new boundary midpoints are projected onto dU.
ParamMesh refine(const ParamMesh& mesh, const DomainSpec& domain);

struct MeshQuality {
  double max_edge = 0.0;
  double min_angle_deg = 180.0;
  double min_area = 0.0;
};
MeshQuality mesh_quality(const ParamMesh& mesh);

/// V - E + T; 1 for disk topology.
int euler_characteristic(const ParamMesh& mesh);

/// Checks all ParamMesh invariants; throws MeshFailure on violation.
void check_mesh(const ParamMesh& mesh, const DomainSpec& domain);

/// Symmetric rule on the reference triangle. Weights are positive and sum to
/// 1; integrals are weights-dot-values times the triangle area.
struct QuadratureRule {
  int order = 0;
  std::vector<std::array<double, 3>> points;  // barycentric
  std::vector<double> weights;
};

/// Rules of polynomial exactness degree 1..4. Throws UnsupportedOrder.
QuadratureRule quadrature(int order);

/// Gauss rule on [0,1] for boundary-edge integrals (3 points, degree 5).
struct EdgeQuadrature {
  std::array<double, 3> t;
  std::array<double, 3> w;  // sums to 1
};
EdgeQuadrature edge_quadrature();

}  // namespace surfpoisson
