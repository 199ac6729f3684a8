#include "surfpoisson/solver.hpp"

#include <cmath>

#include "surfpoisson/errors.hpp"

namespace surfpoisson {

namespace {

VecX jacobi_diagonal(const SparseMat& A) {
  VecX d = A.diagonal();
  for (int i = 0; i < d.size(); ++i)
    if (d[i] == 0.0) d[i] = 1.0;
  return d;
}

/// Plain Jacobi-preconditioned CG for an SPD system; used for the interior
/// Dirichlet block where no kernel projection is needed.
VecX cg_spd(const SparseMat& A, const VecX& b, double tol, int max_iter) {
  const int n = static_cast<int>(b.size());
  VecX x = VecX::Zero(n);
  if (n == 0) return x;
  const VecX d = jacobi_diagonal(A);
  VecX r = b;
  VecX z = r.cwiseQuotient(d);
  VecX p = z;
  double rz = r.dot(z);
  const double b_norm = b.norm();
  if (b_norm == 0.0) return x;
  for (int k = 0; k < max_iter; ++k) {
    if (r.norm() <= tol * b_norm) return x;
    const VecX Ap = A * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw SingularInteriorBlock("interior stiffness block is not positive definite");
    const double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    z = r.cwiseQuotient(d);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (r.norm() > 1e-6 * b_norm)
    throw SingularInteriorBlock("interior CG failed to converge");
  return x;
}

SparseOperator flat_stiffness(const ParamMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(9 * mesh.n_triangles());
  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const double twoA = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                        (p2.x() - p0.x()) * (p1.y() - p0.y());
    const Vec2 pts[3] = {p0, p1, p2};
    Vec2 grad[3];
    for (int i = 0; i < 3; ++i) {
      const Vec2 e = pts[(i + 2) % 3] - pts[(i + 1) % 3];
      grad[i] = Vec2(-e.y(), e.x()) / twoA;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(tri[i], tri[j], 0.5 * twoA * grad[i].dot(grad[j]));
  }
  SparseOperator op;
  op.dim = mesh.n_vertices();
  op.symmetric = true;
  op.matrix.resize(op.dim, op.dim);
  op.matrix.setFromTriplets(trips.begin(), trips.end());
  op.matrix.makeCompressed();
  return op;
}

}  // namespace

double check_compatibility(const Chart& chart, const ParamMesh& mesh,
                           const QuadratureRule& quad, const ScalarOnU& F) {
  double total = 0.0;
  double abs_total = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const double area = 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                               (p2.x() - p0.x()) * (p1.y() - p0.y()));
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const auto& bq = quad.points[q];
      const Vec2 X = bq[0] * p0 + bq[1] * p1 + bq[2] * p2;
      const double w = quad.weights[q] * area * metric_frame(chart, X).sqrtG;
      const double f = F(X);
      total += w * f;
      abs_total += w * std::abs(f);
    }
  }
  return abs_total > 1e-300 ? std::abs(total) / abs_total : 0.0;
}

SolveReport solve_neumann(const SparseOperator& A, const SparseOperator& M, const VecX& b,
                          const SolverOptions& opts, const VecX* initial,
                          std::optional<double> compat) {
  const int n = A.dim;
  SolveReport rep;

  const VecX ones = VecX::Ones(n);
  const VecX M_ones = M.matrix * ones;
  const double total_measure = ones.dot(M_ones);

  const double b_l1 = b.lpNorm<1>();
  rep.compatibility_defect =
      compat.value_or(b_l1 > 1e-300 ? std::abs(ones.dot(b)) / b_l1 : 0.0);
  if (opts.strict_compatibility && rep.compatibility_defect > opts.compatibility_threshold)
    throw IncompatibleLoad("load violates the zero-mean compatibility condition (defect " +
                           std::to_string(rep.compatibility_defect) + ")");

  const VecX b_proj = b - (ones.dot(b) / total_measure) * M_ones;
  auto project = [&](VecX& v) { v -= (M_ones.dot(v) / total_measure) * ones; };

  VecX x;
  if (initial != nullptr) {
    x = *initial;
    project(x);
  } else {
    x = VecX::Zero(n);
  }

  const double target = b_proj.norm();
  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * n;
  const VecX d = jacobi_diagonal(A.matrix);

  if (target <= 1e-300) {
    rep.solution = x;
    rep.mean_value = total_measure > 0.0 ? M_ones.dot(x) / total_measure : 0.0;
    rep.energy = 0.5 * x.dot(A.matrix * x) - b.dot(x);
    return rep;
  }

  VecX r = b_proj - A.matrix * x;
  r.array() -= r.mean();
  VecX z = r.cwiseQuotient(d);
  VecX p = z;
  double rz = r.dot(z);
  int k = 0;
  bool converged = false;
  for (; k < max_iter; ++k) {
    if (r.norm() <= opts.tol * target) {
      converged = true;
      break;
    }
    const VecX Ap = A.matrix * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) break;  // numerically exhausted search space
    const double alpha = rz / pAp;
    x += alpha * p;
    project(x);
    if ((k + 1) % 50 == 0)
      r = b_proj - A.matrix * x;
    else
      r -= alpha * Ap;
    r.array() -= r.mean();
    z = r.cwiseQuotient(d);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    if (opts.record_energy)
      rep.energy_history.push_back(0.5 * x.dot(A.matrix * x) - b_proj.dot(x));
  }

  rep.solution = x;
  rep.iterations = k;
  rep.algebraic_residual = (b_proj - A.matrix * x).norm() / target;
  rep.mean_value = M_ones.dot(x) / total_measure;
  rep.energy = 0.5 * x.dot(A.matrix * x) - b_proj.dot(x);
  rep.status = (converged || rep.algebraic_residual <= opts.tol)
                   ? SolveStatus::converged
                   : SolveStatus::max_iterations;
  return rep;
}

VecX solve_dirichlet(const SparseOperator& A, const VecX& b, const ParamMesh& mesh,
                     const std::map<int, double>& boundary_values, const SolverOptions& opts) {
  const int n = A.dim;
  std::vector<int> interior;
  std::vector<int> pos(n, -1);
  VecX x = VecX::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (mesh.boundary_vertex_flags[i]) {
      const auto it = boundary_values.find(i);
      if (it == boundary_values.end())
        throw Error("solve_dirichlet: missing value for boundary vertex " + std::to_string(i));
      x[i] = it->second;
    } else {
      pos[i] = static_cast<int>(interior.size());
      interior.push_back(i);
    }
  }

  const int m = static_cast<int>(interior.size());
  std::vector<Eigen::Triplet<double>> trips;
  for (int col = 0; col < A.matrix.outerSize(); ++col)
    for (SparseMat::InnerIterator it(A.matrix, col); it; ++it)
      if (pos[it.row()] >= 0 && pos[it.col()] >= 0)
        trips.emplace_back(pos[it.row()], pos[it.col()], it.value());
  SparseMat A_ii(m, m);
  A_ii.setFromTriplets(trips.begin(), trips.end());
  A_ii.makeCompressed();

  const VecX lifted = A.matrix * x;
  VecX rhs(m);
  for (int i = 0; i < m; ++i) rhs[i] = b[interior[i]] - lifted[interior[i]];

  const int max_iter = opts.max_iter > 0 ? opts.max_iter : 10 * std::max(m, 1);
  const VecX sol = cg_spd(A_ii, rhs, opts.tol, max_iter);
  for (int i = 0; i < m; ++i) x[interior[i]] = sol[i];
  return x;
}

SurfaceField harmonic_extension(const ParamMesh& mesh, const ScalarOnU& trace,
                                const SolverOptions& opts) {
  const SparseOperator A = flat_stiffness(mesh);
  std::map<int, double> bv;
  for (const int v : mesh.boundary_vertices()) bv[v] = trace(mesh.vertices[v]);
  SurfaceField out;
  out.mesh = &mesh;
  out.values = solve_dirichlet(A, VecX::Zero(mesh.n_vertices()), mesh, bv, opts);
  return out;
}

VecX conormal_derivative(const Chart& chart, const ParamMesh& mesh, const SurfaceField& v) {
  std::map<std::pair<int, int>, int> owner;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    owner.emplace(std::minmax(tri[0], tri[1]), t);
    owner.emplace(std::minmax(tri[1], tri[2]), t);
    owner.emplace(std::minmax(tri[2], tri[0]), t);
  }
  VecX out(static_cast<int>(mesh.boundary_edges.size()));
  for (size_t k = 0; k < mesh.boundary_edges.size(); ++k) {
    const auto& e = mesh.boundary_edges[k];
    const int t = owner.at(std::minmax(e.v0, e.v1));
    const auto& tri = mesh.triangles[t];
    const Vec2 pts[3] = {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
    const double twoA = (pts[1].x() - pts[0].x()) * (pts[2].y() - pts[0].y()) -
                        (pts[2].x() - pts[0].x()) * (pts[1].y() - pts[0].y());
    Vec2 dv = Vec2::Zero();
    for (int i = 0; i < 3; ++i) {
      const Vec2 edge = pts[(i + 2) % 3] - pts[(i + 1) % 3];
      dv += v.values[tri[i]] * Vec2(-edge.y(), edge.x()) / twoA;
    }
    const Vec2 mid = 0.5 * (mesh.vertices[e.v0] + mesh.vertices[e.v1]);
    const MetricFrame f = metric_frame(chart, mid);
    const Vec2 up = f.g_upper * dv;
    const Vec3 grad = up.x() * f.g1 + up.y() * f.g2;
    out[static_cast<int>(k)] = conormal_at(chart, mid, e.normal).dot(grad);
  }
  return out;
}

SolveReport solve_poisson(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
                          const ScalarOnU& F, const SolverOptions& opts) {
  const SparseOperator A = stiffness(chart, mesh, quad);
  const SparseOperator M = mass(chart, mesh, quad);
  const VecX b = load(chart, mesh, quad, F);
  const double compat = check_compatibility(chart, mesh, quad, F);
  SolveReport rep = solve_neumann(A, M, b, opts, nullptr, compat);
  SurfaceField v;
  v.mesh = &mesh;
  v.values = rep.solution;
  rep.flux_residual = boundary_edge_lp_norm(chart, mesh, conormal_derivative(chart, mesh, v), 2.0);
  return rep;
}

}  // namespace surfpoisson
