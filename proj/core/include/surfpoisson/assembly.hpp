#pragma once

#include <functional>

#include "surfpoisson/mesh.hpp"

namespace surfpoisson {

/// Nodal P1 field on the parameter mesh: vhat(X) with v = vhat o Xinv on the
/// surface.
struct SurfaceField {
  const ParamMesh* mesh = nullptr;
  VecX values;
};

/// Nodal field with ambient R^3 values per vertex.
struct SurfaceVectorField {
  const ParamMesh* mesh = nullptr;
  std::vector<Vec3> values;
};

/// Piecewise-constant ambient R^3 values per triangle (gradients live here).
struct TriangleVectorField {
  const ParamMesh* mesh = nullptr;
  std::vector<Vec3> values;
};

/// Piecewise-constant scalar per triangle.
struct TriangleScalarField {
  const ParamMesh* mesh = nullptr;
  VecX values;
};

struct SparseOperator {
  int dim = 0;
  bool symmetric = false;
  SparseMat matrix;
};

using ScalarOnU = std::function<double(const Vec2&)>;

/// A_ij = int_U g^{ab} dphi_i/dX_a dphi_j/dX_b sqrtG dX. Symmetric PSD with
/// the constant vector in its kernel (exact row sums up to roundoff).
SparseOperator stiffness(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad);

/// M_ij = int_U phi_i phi_j sqrtG dX; SPD; 1'M1 = |Gamma_0|.
SparseOperator mass(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad);

/// b_i = int_U Fhat phi_i sqrtG dX.
VecX load(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad, const ScalarOnU& F);

/// Boundary mass with the line-element weight |nU_1 g2 - nU_2 g1|; entries
/// only between boundary vertices; 1'B1 = length(boundary of Gamma_0).
SparseOperator boundary_mass(const Chart& chart, const ParamMesh& mesh);

/// Per-triangle grad_Gamma v = sum g^{ab} g_a dvhat/dX_b at the centroid.
TriangleVectorField tangential_gradient(const Chart& chart, const ParamMesh& mesh, const SurfaceField& v);

/// Per-triangle div_Gamma f = sum_j sum_{ab} g^{ab} (g_a)_j dfhat_j/dX_b at
/// the centroid, for nodal f.
TriangleScalarField surface_divergence(const Chart& chart, const ParamMesh& mesh, const SurfaceVectorField& f);

/// ||v||_{L^p(Gamma_0)} of the P1 interpolant, p in [1, inf).
double lp_norm(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
               const SurfaceField& v, double p);

/// ||grad_Gamma v||_{L^2(Gamma_0)}; equals sqrt(v'Av) for the same rule.
double h1_seminorm(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
                   const SurfaceField& v);

/// ||v||_{L^p(boundary of Gamma_0)} of the nodal trace.
double boundary_lp_norm(const Chart& chart, const ParamMesh& mesh, const SurfaceField& v, double p);

/// Boundary L^p norm of per-edge constant values (conormal_derivative output).
double boundary_edge_lp_norm(const Chart& chart, const ParamMesh& mesh,
                             const VecX& edge_values, double p);

/// L^p norm over the flat parameter domain U (weight 1), for the
/// norm-equivalence bounds.
double lp_norm_param(const ParamMesh& mesh, const QuadratureRule& quad,
                     const SurfaceField& v, double p);

}  // namespace surfpoisson
