#pragma once

#include <cstdint>
#include <string>

#include "surfpoisson/divfield.hpp"

namespace surfpoisson {

/// Scalar field on U with analytic first derivatives.
struct AnalyticScalarField {
  ScalarOnU value;
  std::function<Vec2(const Vec2&)> grad;  // (d/dX1, d/dX2)
};

/// Ambient vector field on U with analytic first derivatives.
struct AnalyticVectorField {
  std::function<Vec3(const Vec2&)> value;
  std::function<Vec3(const Vec2&)> dX1;
  std::function<Vec3(const Vec2&)> dX2;
};

struct IdentityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_defect = 0.0;
  double rel_defect = 0.0;  // abs / max(|lhs|, |rhs|, 1e-30)
  double mesh_h = 0.0;
  int quad_order = 0;
};

/// Surface divergence theorem: reports lhs = int (div_Gamma f + H (n.f)) dH2,
/// rhs = boundary int nu.f dH1. Integrates analytic evaluators with the given
/// rule over the meshed domain; the defect isolates quadrature error.
IdentityReport check_divergence_theorem(const Chart& chart, const ParamMesh& mesh,
                                        const QuadratureRule& quad, const AnalyticVectorField& f,
                                        const std::string& name = "divergence_theorem");

/// Integration by parts in direction j (0-based ambient component index):
/// lhs = int (f d_j psi + (d_j f + H n_j f) psi) dH2, rhs = boundary int
/// nu_j f psi dH1, with d_j the tangential derivative.
IdentityReport check_integration_by_parts(const Chart& chart, const ParamMesh& mesh,
                                          const QuadratureRule& quad, const AnalyticScalarField& f,
                                          const AnalyticScalarField& psi, int j,
                                          const std::string& name = "integration_by_parts");

struct EigenEstimate {
  double lambda1 = 0.0;  // smallest positive eigenvalue of A u = lambda M u
  double c_star = 0.0;   // 1/sqrt(lambda1)
  int iterations = 0;
};

/// Deflated inverse-power iteration reusing solve_neumann as inverse action.
EigenEstimate estimate_poincare_constant(const SparseOperator& A, const SparseOperator& M,
                                         double tol = 1e-8, int max_iter = 500);

struct CoercivityReport {
  double min_ratio = 0.0;
  double c_star = 0.0;
  int samples = 0;
};

/// min over random mean-zero fields of v'Av / ((1/(C*^2+1)) (v'Mv + v'Av)).
CoercivityReport check_coercivity(const SparseOperator& A, const SparseOperator& M, double c_star,
                                  int samples, std::uint64_t seed);

/// C_b = min{ 1/(1 + 2 b'^2), 1/2 }.
double flattening_bound(double b_prime);
/// Smallest eigenvalue of [[1, -b'], [-b', 1 + b'^2]] in closed form.
double flattening_form_min_eigenvalue(double b_prime);

struct EllipticityReport {
  double min_margin = 0.0;
  double worst_b_prime = 0.0;
  Vec2 worst_xi = Vec2::Zero();
};

/// min over all (b', xi) pairs of xi1^2 + (1+b'^2) xi2^2 - 2 b' xi1 xi2 - C_b |xi|^2.
EllipticityReport check_flattening_ellipticity(const std::vector<double>& b_prime_samples,
                                               const std::vector<Vec2>& xi_samples);
/// Seeded uniform samples: b' in [-b_max, b_max], xi on the unit circle.
std::vector<double> sample_b_primes(int n, std::uint64_t seed, double b_max = 10.0);
std::vector<Vec2> sample_directions(int n, std::uint64_t seed);

struct ConvergenceRow {
  double h = 0.0;
  int dof = 0;
  double l2_error = 0.0;
  double h1_error = 0.0;
  double flux_residual = 0.0;
  double mean_value = 0.0;
  double l2_rate = 0.0;  // log2(e_{2h}/e_h); NaN on the first row
  double h1_rate = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double l2_rate = 0.0;  // over the last two levels
  double h1_rate = 0.0;
};

/// Manufactured pair: exact solution (with parameter-plane gradient) and its
/// forcing F = -Lap_Gamma v.
struct ManufacturedSolution {
  AnalyticScalarField v;
  ScalarOnU F;
};

/// Solves the manufactured problem on `levels` uniform refinements starting
/// at h0 and reports L^2 / H^1 errors, boundary flux, and per-level rates.
ConvergenceTable convergence_study(const Chart& chart, const ManufacturedSolution& manufactured,
                                   double h0, int levels, const QuadratureRule& quad,
                                   const SolverOptions& opts = {});

}  // namespace surfpoisson
