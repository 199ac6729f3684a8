#include "surfpoisson/divfield.hpp"

#include <cmath>
#include <set>

namespace surfpoisson {

SurfaceVectorField recover_tangential_gradient(const Chart& chart, const ParamMesh& mesh,
                                               const SurfaceField& v) {
  const TriangleVectorField per_tri = tangential_gradient(chart, mesh, v);

  std::vector<double> tri_weight(mesh.n_triangles());
  std::vector<Vec2> tri_centroid(mesh.n_triangles());
  std::vector<std::vector<int>> vertex_tris(mesh.n_vertices());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const double area_U = 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                                 (p2.x() - p0.x()) * (p1.y() - p0.y()));
    tri_centroid[t] = (p0 + p1 + p2) / 3.0;
    tri_weight[t] = area_U * metric_frame(chart, tri_centroid[t]).sqrtG;
    for (int i = 0; i < 3; ++i) vertex_tris[tri[i]].push_back(t);
  }

  SurfaceVectorField out;
  out.mesh = &mesh;
  out.values.resize(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    // Patch of elements around the vertex; small (boundary) patches are
    // widened by one vertex ring so the affine fit below stays determined.
    std::set<int> patch(vertex_tris[i].begin(), vertex_tris[i].end());
    if (patch.size() < 4) {
      for (const int t : vertex_tris[i])
        for (const int vtx : mesh.triangles[t])
          patch.insert(vertex_tris[vtx].begin(), vertex_tris[vtx].end());
    }

    // Weighted least-squares affine fit g(X) = a + B (X - X_i) to the
    // per-triangle gradients, evaluated at the vertex. This keeps second-order
    // accuracy at boundary vertices, where plain averaging is one-sided.
    double scale = 0.0;
    for (const int t : patch) scale = std::max(scale, (tri_centroid[t] - mesh.vertices[i]).norm());
    if (scale == 0.0) scale = 1.0;
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d rhs = Eigen::Matrix3d::Zero();  // one column per component
    Vec3 mean = Vec3::Zero();
    double total = 0.0;
    for (const int t : patch) {
      const Vec2 d = (tri_centroid[t] - mesh.vertices[i]) / scale;
      const Eigen::Vector3d phi(1.0, d.x(), d.y());
      A += tri_weight[t] * phi * phi.transpose();
      rhs += tri_weight[t] * phi * per_tri.values[t].transpose();
      mean += tri_weight[t] * per_tri.values[t];
      total += tri_weight[t];
    }
    Vec3 g;
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(A);
    if (patch.size() >= 3 && lu.isInvertible()) {
      g = (lu.solve(rhs)).row(0).transpose();  // affine fit at d = 0
    } else {
      g = mean / total;
    }
    const Vec3 n = metric_frame(chart, mesh.vertices[i]).n;
    out.values[i] = g - n.dot(g) * n;
  }
  return out;
}

DivSolveReport solve_div_system(const Chart& chart, const ParamMesh& mesh,
                                const QuadratureRule& quad, const ScalarOnU& F,
                                const ScalarOnU& chi, const SolverOptions& opts) {
  const ScalarOnU combined = [&chart, &F, &chi](const Vec2& X) {
    return F(X) + chi(X) * metric_frame(chart, X).H;
  };
  const SparseOperator A = stiffness(chart, mesh, quad);
  const SparseOperator M = mass(chart, mesh, quad);
  const VecX b = load(chart, mesh, quad, combined);
  const double compat = check_compatibility(chart, mesh, quad, combined);

  DivSolveReport rep;
  rep.compatibility_defect = compat;
  rep.potential = solve_neumann(A, M, b, opts, nullptr, compat);

  SurfaceField v;
  v.mesh = &mesh;
  v.values = rep.potential.solution;
  const SurfaceVectorField grad = recover_tangential_gradient(chart, mesh, v);

  rep.V.mesh = &mesh;
  rep.V.values.resize(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const MetricFrame f = metric_frame(chart, mesh.vertices[i]);
    rep.V.values[i] = -grad.values[i] + chi(mesh.vertices[i]) * f.n;
  }

  const DivResiduals res = verify_div_system(chart, mesh, quad, rep.V, F, chi);
  rep.div_residual = res.div_residual;
  rep.normal_residual = res.normal_residual;
  rep.conormal_residual = res.conormal_residual;
  return rep;
}

DivResiduals verify_div_system(const Chart& chart, const ParamMesh& mesh,
                               const QuadratureRule& quad, const SurfaceVectorField& V,
                               const ScalarOnU& F, const ScalarOnU& chi) {
  DivResiduals res;

  const TriangleScalarField div = surface_divergence(chart, mesh, V);
  double acc = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2& p0 = mesh.vertices[tri[0]];
    const Vec2& p1 = mesh.vertices[tri[1]];
    const Vec2& p2 = mesh.vertices[tri[2]];
    const double area = 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                               (p2.x() - p0.x()) * (p1.y() - p0.y()));
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const auto& bq = quad.points[q];
      const Vec2 X = bq[0] * p0 + bq[1] * p1 + bq[2] * p2;
      const double diff = div.values[t] - F(X);
      acc += quad.weights[q] * area * metric_frame(chart, X).sqrtG * diff * diff;
    }
  }
  res.div_residual = std::sqrt(acc);

  VecX defect(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const Vec2& X = mesh.vertices[i];
    defect[i] = V.values[i].dot(metric_frame(chart, X).n) - chi(X);
  }
  const SparseOperator M = mass(chart, mesh, quad);
  res.normal_residual = std::sqrt(defect.dot(M.matrix * defect));

  const EdgeQuadrature eq = edge_quadrature();
  double bacc = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    const Vec2& P0 = mesh.vertices[e.v0];
    const Vec2& P1 = mesh.vertices[e.v1];
    const double len = (P1 - P0).norm();
    for (int q = 0; q < 3; ++q) {
      const double t = eq.t[q];
      const Vec2 X = (1.0 - t) * P0 + t * P1;
      const Vec3 Vq = (1.0 - t) * V.values[e.v0] + t * V.values[e.v1];
      const double flux = conormal_at(chart, X, e.normal).dot(Vq);
      bacc += eq.w[q] * len * boundary_line_element(chart, X, e.normal) * flux * flux;
    }
  }
  res.conormal_residual = std::sqrt(bacc);
  return res;
}

}  // namespace surfpoisson
