#include "surfpoisson/verify.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "surfpoisson/errors.hpp"

namespace surfpoisson {

namespace {

double rel_defect_of(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
}

/// Integrates an analytic density over the meshed domain with the given rule.
template <typename Density>
double volume_integral(const ParamMesh& mesh, const QuadratureRule& quad, Density&& density) {
  double acc = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const double area = 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                               (p2.x() - p0.x()) * (p1.y() - p0.y()));
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const auto& bq = quad.points[q];
      const Vec2 X = bq[0] * p0 + bq[1] * p1 + bq[2] * p2;
      acc += quad.weights[q] * area * density(X);
    }
  }
  return acc;
}

/// Integrates an analytic density along the polygonal boundary, passing each
/// quadrature point together with the owning edge's outward normal.
template <typename Density>
double boundary_integral(const ParamMesh& mesh, Density&& density) {
  const EdgeQuadrature eq = edge_quadrature();
  double acc = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    const Vec2& P0 = mesh.vertices[e.v0];
    const Vec2& P1 = mesh.vertices[e.v1];
    const double len = (P1 - P0).norm();
    for (int q = 0; q < 3; ++q) {
      const Vec2 X = (1.0 - eq.t[q]) * P0 + eq.t[q] * P1;
      acc += eq.w[q] * len * density(X, e.normal);
    }
  }
  return acc;
}

Vec3 tangential_gradient_at(const MetricFrame& f, const Vec2& grad_param) {
  const Vec2 up = f.g_upper * grad_param;
  return up.x() * f.g1 + up.y() * f.g2;
}

}  // namespace

IdentityReport check_divergence_theorem(const Chart& chart, const ParamMesh& mesh,
                                        const QuadratureRule& quad, const AnalyticVectorField& f,
                                        const std::string& name) {
  IdentityReport rep;
  rep.name = name;
  rep.mesh_h = mesh.h_target;
  rep.quad_order = quad.order;
  rep.lhs = volume_integral(mesh, quad, [&](const Vec2& X) {
    const MetricFrame fr = metric_frame(chart, X);
    const Vec3 df[2] = {f.dX1(X), f.dX2(X)};
    const Vec3 gvec[2] = {fr.g1, fr.g2};
    double div = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) div += fr.g_upper(a, b) * gvec[a].dot(df[b]);
    return fr.sqrtG * (div + fr.H * fr.n.dot(f.value(X)));
  });
  rep.rhs = boundary_integral(mesh, [&](const Vec2& X, const Vec2& nU) {
    return boundary_line_element(chart, X, nU) * conormal_at(chart, X, nU).dot(f.value(X));
  });
  rep.abs_defect = std::abs(rep.lhs - rep.rhs);
  rep.rel_defect = rel_defect_of(rep.lhs, rep.rhs);
  return rep;
}

IdentityReport check_integration_by_parts(const Chart& chart, const ParamMesh& mesh,
                                          const QuadratureRule& quad, const AnalyticScalarField& f,
                                          const AnalyticScalarField& psi, int j,
                                          const std::string& name) {
  IdentityReport rep;
  rep.name = name;
  rep.mesh_h = mesh.h_target;
  rep.quad_order = quad.order;
  rep.lhs = volume_integral(mesh, quad, [&](const Vec2& X) {
    const MetricFrame fr = metric_frame(chart, X);
    const double dj_f = tangential_gradient_at(fr, f.grad(X))[j];
    const double dj_psi = tangential_gradient_at(fr, psi.grad(X))[j];
    return fr.sqrtG *
           (f.value(X) * dj_psi + (dj_f + fr.H * fr.n[j] * f.value(X)) * psi.value(X));
  });
  rep.rhs = boundary_integral(mesh, [&](const Vec2& X, const Vec2& nU) {
    return boundary_line_element(chart, X, nU) * conormal_at(chart, X, nU)[j] * f.value(X) *
           psi.value(X);
  });
  rep.abs_defect = std::abs(rep.lhs - rep.rhs);
  rep.rel_defect = rel_defect_of(rep.lhs, rep.rhs);
  return rep;
}

EigenEstimate estimate_poincare_constant(const SparseOperator& A, const SparseOperator& M,
                                         double tol, int max_iter) {
  const int n = A.dim;
  const VecX ones = VecX::Ones(n);
  const VecX M_ones = M.matrix * ones;
  const double total = ones.dot(M_ones);
  auto project = [&](VecX& v) { v -= (M_ones.dot(v) / total) * ones; };

  // Deterministic start with broad spectral content; the constant mode is
  // deflated by M-orthogonal projection here and inside solve_neumann.
  VecX u(n);
  for (int i = 0; i < n; ++i) u[i] = std::sin(1.0 + static_cast<double>(i));
  project(u);

  SolverOptions inner;
  inner.tol = 1e-12;

  double lambda = 0.0;
  double lambda_prev = std::numeric_limits<double>::infinity();
  EigenEstimate est;
  for (int k = 0; k < max_iter; ++k) {
    u /= std::sqrt(u.dot(M.matrix * u));
    const VecX rhs = M.matrix * u;
    const SolveReport step = solve_neumann(A, M, rhs, inner, &u);
    VecX w = step.solution;
    project(w);
    const double wMw = w.dot(M.matrix * w);
    lambda = w.dot(M.matrix * u) / wMw;  // Rayleigh quotient via A w = M u
    u = w;
    est.iterations = k + 1;
    if (std::abs(lambda - lambda_prev) <= tol * std::abs(lambda)) {
      est.lambda1 = lambda;
      est.c_star = 1.0 / std::sqrt(lambda);
      return est;
    }
    lambda_prev = lambda;
  }
  throw EigenNoConvergence("inverse iteration did not reach tolerance " + std::to_string(tol) +
                           " in " + std::to_string(max_iter) + " iterations");
}

CoercivityReport check_coercivity(const SparseOperator& A, const SparseOperator& M, double c_star,
                                  int samples, std::uint64_t seed) {
  const int n = A.dim;
  const VecX ones = VecX::Ones(n);
  const VecX M_ones = M.matrix * ones;
  const double total = ones.dot(M_ones);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  CoercivityReport rep;
  rep.c_star = c_star;
  rep.samples = samples;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const double coeff = 1.0 / (c_star * c_star + 1.0);
  for (int s = 0; s < samples; ++s) {
    VecX v(n);
    for (int i = 0; i < n; ++i) v[i] = unif(rng);
    v -= (M_ones.dot(v) / total) * ones;
    const double vAv = v.dot(A.matrix * v);
    const double vMv = v.dot(M.matrix * v);
    rep.min_ratio = std::min(rep.min_ratio, vAv / (coeff * (vMv + vAv)));
  }
  return rep;
}

double flattening_bound(double b_prime) {
  return std::min(1.0 / (1.0 + 2.0 * b_prime * b_prime), 0.5);
}

double flattening_form_min_eigenvalue(double b_prime) {
  const double trace = 2.0 + b_prime * b_prime;  // det is exactly 1
  return 0.5 * (trace - std::sqrt(trace * trace - 4.0));
}

EllipticityReport check_flattening_ellipticity(const std::vector<double>& b_prime_samples,
                                               const std::vector<Vec2>& xi_samples) {
  EllipticityReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const double bp : b_prime_samples) {
    const double cb = flattening_bound(bp);
    for (const Vec2& xi : xi_samples) {
      const double quad_form = xi.x() * xi.x() + (1.0 + bp * bp) * xi.y() * xi.y() -
                               2.0 * bp * xi.x() * xi.y();
      const double margin = quad_form - cb * xi.squaredNorm();
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.worst_b_prime = bp;
        rep.worst_xi = xi;
      }
    }
  }
  return rep;
}

std::vector<double> sample_b_primes(int n, std::uint64_t seed, double b_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-b_max, b_max);
  std::vector<double> out(n);
  for (double& v : out) v = unif(rng);
  return out;
}

std::vector<Vec2> sample_directions(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * 3.14159265358979323846);
  std::vector<Vec2> out(n);
  for (Vec2& v : out) {
    const double theta = unif(rng);
    v = Vec2(std::cos(theta), std::sin(theta));
  }
  return out;
}

ConvergenceTable convergence_study(const Chart& chart, const ManufacturedSolution& manufactured,
                                   double h0, int levels, const QuadratureRule& quad,
                                   const SolverOptions& opts) {
  ConvergenceTable table;
  ParamMesh mesh = generate_mesh(chart.domain, h0);
  for (int level = 0; level < levels; ++level) {
    if (level > 0) mesh = refine(mesh, chart.domain);

    const SolveReport rep = solve_poisson(chart, mesh, quad, manufactured.F, opts);

    // Align the zero-mean discrete solution with the exact one by a constant.
    const double area = volume_integral(
        mesh, quad, [&](const Vec2& X) { return metric_frame(chart, X).sqrtG; });
    const double exact_mean =
        volume_integral(mesh, quad,
                        [&](const Vec2& X) {
                          return metric_frame(chart, X).sqrtG * manufactured.v.value(X);
                        }) /
        area;
    const double shift = exact_mean - rep.mean_value;

    double l2_acc = 0.0;
    double h1_acc = 0.0;
    for (const auto& tri : mesh.triangles) {
      const Vec2 pts[3] = {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
      const double twoA = (pts[1].x() - pts[0].x()) * (pts[2].y() - pts[0].y()) -
                          (pts[2].x() - pts[0].x()) * (pts[1].y() - pts[0].y());
      Vec2 dvh = Vec2::Zero();
      for (int i = 0; i < 3; ++i) {
        const Vec2 e = pts[(i + 2) % 3] - pts[(i + 1) % 3];
        dvh += rep.solution[tri[i]] * Vec2(-e.y(), e.x()) / twoA;
      }
      for (size_t q = 0; q < quad.points.size(); ++q) {
        const auto& bq = quad.points[q];
        const Vec2 X = bq[0] * pts[0] + bq[1] * pts[1] + bq[2] * pts[2];
        const MetricFrame fr = metric_frame(chart, X);
        const double w = quad.weights[q] * 0.5 * twoA * fr.sqrtG;
        double vh = 0.0;
        for (int i = 0; i < 3; ++i) vh += bq[i] * rep.solution[tri[i]];
        const double diff = vh + shift - manufactured.v.value(X);
        l2_acc += w * diff * diff;
        const Vec2 dgrad = dvh - manufactured.v.grad(X);
        h1_acc += w * dgrad.dot(fr.g_upper * dgrad);
      }
    }

    ConvergenceRow row;
    row.h = mesh.h_target;
    row.dof = mesh.n_vertices();
    row.l2_error = std::sqrt(l2_acc);
    row.h1_error = std::sqrt(h1_acc);
    row.flux_residual = rep.flux_residual;
    row.mean_value = rep.mean_value;
    if (table.rows.empty()) {
      row.l2_rate = std::numeric_limits<double>::quiet_NaN();
      row.h1_rate = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.l2_rate = std::log2(table.rows.back().l2_error / row.l2_error);
      row.h1_rate = std::log2(table.rows.back().h1_error / row.h1_error);
    }
    table.rows.push_back(row);
  }
  if (table.rows.size() >= 2) {
    table.l2_rate = table.rows.back().l2_rate;
    table.h1_rate = table.rows.back().h1_rate;
  }
  return table;
}

}  // namespace surfpoisson
