#pragma once

#include <limits>
#include <map>
#include <optional>

#include "surfpoisson/assembly.hpp"

namespace surfpoisson {

struct SolverOptions {
  double tol = 1e-10;  // relative residual target
  int max_iter = 0;    // 0 -> 10 * dimension
  bool strict_compatibility = false;
  double compatibility_threshold = 1e-8;
  bool record_energy = false;  // store 1/2 v'Av - b'v per CG iteration
};

enum class SolveStatus { converged, max_iterations };

struct SolveReport {
  VecX solution;
  int iterations = 0;
  double algebraic_residual = 0.0;   // |Av - b_proj| / |b_proj|
  double compatibility_defect = 0.0; // |int F dH2| / int |F| dH2
  double mean_value = 0.0;           // int v dH2 / |Gamma_0|
  double flux_residual = std::numeric_limits<double>::quiet_NaN();
  double energy = 0.0;               // 1/2 v'Av - b'v
  SolveStatus status = SolveStatus::converged;
  std::vector<double> energy_history;
};

/// |int_Gamma F dH2| / int_Gamma |F| dH2 by quadrature; 0 for F identically 0.
double check_compatibility(const Chart& chart, const ParamMesh& mesh,
                           const QuadratureRule& quad, const ScalarOnU& F);

/// Minimizes 1/2 v'Av - b'v over {1'Mv = 0}: Jacobi-preconditioned CG with the
/// load pre-projected (b <- b - (1'b/1'M1) M1) and the iterate kept
/// M-orthogonal to constants. `compat` overrides the report's
/// compatibility_defect (pipelines pass check_compatibility's value); when
/// absent the discrete proxy |1'b| / ||b||_1 is recorded. Throws
/// IncompatibleLoad in strict mode; max_iter exhaustion is flagged in the
/// report, not thrown.
SolveReport solve_neumann(const SparseOperator& A, const SparseOperator& M, const VecX& b,
                          const SolverOptions& opts = {}, const VecX* initial = nullptr,
                          std::optional<double> compat = std::nullopt);

/// Eliminates boundary DOFs and solves the interior block by CG. The result
/// matches boundary_values exactly on boundary vertices. boundary_values must
/// cover every boundary vertex.
VecX solve_dirichlet(const SparseOperator& A, const VecX& b, const ParamMesh& mesh,
                     const std::map<int, double>& boundary_values, const SolverOptions& opts = {});

/// Flat-Laplacian Dirichlet lift on U: flat-chart stiffness, zero load,
/// boundary data trace(X) at boundary vertices.
SurfaceField harmonic_extension(const ParamMesh& mesh, const ScalarOnU& trace,
                                const SolverOptions& opts = {});

/// Per-boundary-edge nu . grad_Gamma v, with grad from the adjacent triangle
/// and nu evaluated at the edge midpoint with the edge's outward normal.
VecX conormal_derivative(const Chart& chart, const ParamMesh& mesh, const SurfaceField& v);

/// Full pipeline for the zero co-normal problem: assembles, checks
/// compatibility (strict mode throws IncompatibleLoad), solves, and fills
/// flux_residual with the boundary L^2 norm of the discrete conormal
/// derivative.
SolveReport solve_poisson(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
                          const ScalarOnU& F, const SolverOptions& opts = {});

}  // namespace surfpoisson
