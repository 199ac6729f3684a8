#pragma once

#include "surfpoisson/solver.hpp"

namespace surfpoisson {

struct DivResiduals {
  double div_residual = 0.0;      // ||div_Gamma V - F||_{L^2}
  double normal_residual = 0.0;   // mass norm of the nodal defect V.n - chi
  double conormal_residual = 0.0; // boundary L^2 of V.nu
};

struct DivSolveReport {
  SurfaceVectorField V;
  SolveReport potential;  // Neumann solve of -Lap_Gamma v = F + chi H_Gamma
  double div_residual = 0.0;
  double normal_residual = 0.0;
  double conormal_residual = 0.0;
  double compatibility_defect = 0.0;  // |int (F + chi H) dH2| normalized
};

/// Nodal tangential-gradient recovery: weighted least-squares affine fit of
/// the per-triangle gradients over each vertex patch (widened by one ring for
/// small patches), evaluated at the vertex and projected onto its tangent
/// plane. Keeps O(h) nodal accuracy up to the boundary, where plain averaging
/// degrades.
SurfaceVectorField recover_tangential_gradient(const Chart& chart, const ParamMesh& mesh,
                                               const SurfaceField& v);

/// Builds V = -grad_Gamma v + chi n with v solving the Neumann problem for
/// F + chi H_Gamma. V is nodal, so V.n = chi holds exactly at vertices.
/// Compatibility of the combined load is a checked precondition: the defect
/// is always reported, and strict mode throws IncompatibleLoad.
DivSolveReport solve_div_system(const Chart& chart, const ParamMesh& mesh,
                                const QuadratureRule& quad, const ScalarOnU& F,
                                const ScalarOnU& chi, const SolverOptions& opts = {});

/// Recomputes the three residuals from V alone.
DivResiduals verify_div_system(const Chart& chart, const ParamMesh& mesh,
                               const QuadratureRule& quad, const SurfaceVectorField& V,
                               const ScalarOnU& F, const ScalarOnU& chi);

}  // namespace surfpoisson
