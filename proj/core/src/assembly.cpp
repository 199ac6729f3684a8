#include "surfpoisson/assembly.hpp"

#include <cmath>
#include <vector>

namespace surfpoisson {

namespace {

struct TriGeom {
  Vec2 p[3];
  Vec2 grad[3];  // constant P1 basis gradients in U
  double area = 0.0;
};

TriGeom tri_geom(const ParamMesh& mesh, int t) {
  TriGeom g;
  for (int i = 0; i < 3; ++i) g.p[i] = mesh.vertices[mesh.triangles[t][i]];
  const double twoA = (g.p[1].x() - g.p[0].x()) * (g.p[2].y() - g.p[0].y()) -
                      (g.p[2].x() - g.p[0].x()) * (g.p[1].y() - g.p[0].y());
  g.area = 0.5 * twoA;
  for (int i = 0; i < 3; ++i) {
    const Vec2 e = g.p[(i + 2) % 3] - g.p[(i + 1) % 3];
    g.grad[i] = Vec2(-e.y(), e.x()) / twoA;
  }
  return g;
}

Vec2 quad_point(const TriGeom& g, const QuadratureRule& quad, size_t q) {
  const auto& b = quad.points[q];
  return b[0] * g.p[0] + b[1] * g.p[1] + b[2] * g.p[2];
}

SparseOperator from_triplets(int dim, std::vector<Eigen::Triplet<double>>& trips) {
  SparseOperator op;
  op.dim = dim;
  op.symmetric = true;
  op.matrix.resize(dim, dim);
  op.matrix.setFromTriplets(trips.begin(), trips.end());
  op.matrix.makeCompressed();
  return op;
}

}  // namespace

SparseOperator stiffness(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(9 * mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    double local[3][3] = {};
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const MetricFrame f = metric_frame(chart, quad_point(g, quad, q));
      const double w = quad.weights[q] * g.area * f.sqrtG;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          local[i][j] += w * g.grad[i].dot(f.g_upper * g.grad[j]);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(mesh.triangles[t][i], mesh.triangles[t][j], local[i][j]);
  }
  return from_triplets(mesh.n_vertices(), trips);
}

SparseOperator mass(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(9 * mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    double local[3][3] = {};
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const MetricFrame f = metric_frame(chart, quad_point(g, quad, q));
      const double w = quad.weights[q] * g.area * f.sqrtG;
      const auto& b = quad.points[q];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) local[i][j] += w * b[i] * b[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(mesh.triangles[t][i], mesh.triangles[t][j], local[i][j]);
  }
  return from_triplets(mesh.n_vertices(), trips);
}

VecX load(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
          const ScalarOnU& F) {
  VecX b = VecX::Zero(mesh.n_vertices());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const Vec2 X = quad_point(g, quad, q);
      const MetricFrame f = metric_frame(chart, X);
      const double w = quad.weights[q] * g.area * f.sqrtG * F(X);
      for (int i = 0; i < 3; ++i) b[mesh.triangles[t][i]] += w * quad.points[q][i];
    }
  }
  return b;
}

SparseOperator boundary_mass(const Chart& chart, const ParamMesh& mesh) {
  const EdgeQuadrature eq = edge_quadrature();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(4 * mesh.boundary_edges.size());
  for (const auto& e : mesh.boundary_edges) {
    const Vec2& P0 = mesh.vertices[e.v0];
    const Vec2& P1 = mesh.vertices[e.v1];
    const double len = (P1 - P0).norm();
    double local[2][2] = {};
    for (int q = 0; q < 3; ++q) {
      const double t = eq.t[q];
      const Vec2 X = (1.0 - t) * P0 + t * P1;
      const double w = eq.w[q] * len * boundary_line_element(chart, X, e.normal);
      const double shape[2] = {1.0 - t, t};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) local[i][j] += w * shape[i] * shape[j];
    }
    const int idx[2] = {e.v0, e.v1};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) trips.emplace_back(idx[i], idx[j], local[i][j]);
  }
  return from_triplets(mesh.n_vertices(), trips);
}

TriangleVectorField tangential_gradient(const Chart& chart, const ParamMesh& mesh,
                                        const SurfaceField& v) {
  TriangleVectorField out;
  out.mesh = &mesh;
  out.values.resize(mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    Vec2 dv = Vec2::Zero();
    for (int i = 0; i < 3; ++i) dv += v.values[mesh.triangles[t][i]] * g.grad[i];
    const Vec2 centroid = (g.p[0] + g.p[1] + g.p[2]) / 3.0;
    const MetricFrame f = metric_frame(chart, centroid);
    const Vec2 up = f.g_upper * dv;
    out.values[t] = up.x() * f.g1 + up.y() * f.g2;
  }
  return out;
}

TriangleScalarField surface_divergence(const Chart& chart, const ParamMesh& mesh,
                                       const SurfaceVectorField& f) {
  TriangleScalarField out;
  out.mesh = &mesh;
  out.values = VecX::Zero(mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    Vec3 df[2] = {Vec3::Zero(), Vec3::Zero()};  // dfhat/dX_1, dfhat/dX_2
    for (int i = 0; i < 3; ++i) {
      const Vec3& fi = f.values[mesh.triangles[t][i]];
      df[0] += g.grad[i].x() * fi;
      df[1] += g.grad[i].y() * fi;
    }
    const Vec2 centroid = (g.p[0] + g.p[1] + g.p[2]) / 3.0;
    const MetricFrame fr = metric_frame(chart, centroid);
    const Vec3 gvec[2] = {fr.g1, fr.g2};
    double div = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) div += fr.g_upper(a, b) * gvec[a].dot(df[b]);
    out.values[t] = div;
  }
  return out;
}

double lp_norm(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
               const SurfaceField& v, double p) {
  double acc = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const MetricFrame f = metric_frame(chart, quad_point(g, quad, q));
      double val = 0.0;
      for (int i = 0; i < 3; ++i) val += quad.points[q][i] * v.values[mesh.triangles[t][i]];
      acc += quad.weights[q] * g.area * f.sqrtG * std::pow(std::abs(val), p);
    }
  }
  return std::pow(acc, 1.0 / p);
}

double h1_seminorm(const Chart& chart, const ParamMesh& mesh, const QuadratureRule& quad,
                   const SurfaceField& v) {
  double acc = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    Vec2 dv = Vec2::Zero();
    for (int i = 0; i < 3; ++i) dv += v.values[mesh.triangles[t][i]] * g.grad[i];
    for (size_t q = 0; q < quad.points.size(); ++q) {
      const MetricFrame f = metric_frame(chart, quad_point(g, quad, q));
      acc += quad.weights[q] * g.area * f.sqrtG * dv.dot(f.g_upper * dv);
    }
  }
  return std::sqrt(acc);
}

double boundary_lp_norm(const Chart& chart, const ParamMesh& mesh, const SurfaceField& v,
                        double p) {
  const EdgeQuadrature eq = edge_quadrature();
  double acc = 0.0;
  for (const auto& e : mesh.boundary_edges) {
    const Vec2& P0 = mesh.vertices[e.v0];
    const Vec2& P1 = mesh.vertices[e.v1];
    const double len = (P1 - P0).norm();
    for (int q = 0; q < 3; ++q) {
      const double t = eq.t[q];
      const Vec2 X = (1.0 - t) * P0 + t * P1;
      const double val = (1.0 - t) * v.values[e.v0] + t * v.values[e.v1];
      acc += eq.w[q] * len * boundary_line_element(chart, X, e.normal) *
             std::pow(std::abs(val), p);
    }
  }
  return std::pow(acc, 1.0 / p);
}

double boundary_edge_lp_norm(const Chart& chart, const ParamMesh& mesh,
                             const VecX& edge_values, double p) {
  const EdgeQuadrature eq = edge_quadrature();
  double acc = 0.0;
  for (size_t k = 0; k < mesh.boundary_edges.size(); ++k) {
    const auto& e = mesh.boundary_edges[k];
    const Vec2& P0 = mesh.vertices[e.v0];
    const Vec2& P1 = mesh.vertices[e.v1];
    const double len = (P1 - P0).norm();
    for (int q = 0; q < 3; ++q) {
      const Vec2 X = (1.0 - eq.t[q]) * P0 + eq.t[q] * P1;
      acc += eq.w[q] * len * boundary_line_element(chart, X, e.normal) *
             std::pow(std::abs(edge_values[static_cast<int>(k)]), p);
    }
  }
  return std::pow(acc, 1.0 / p);
}

double lp_norm_param(const ParamMesh& mesh, const QuadratureRule& quad,
                     const SurfaceField& v, double p) {
  double acc = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const TriGeom g = tri_geom(mesh, t);
    for (size_t q = 0; q < quad.points.size(); ++q) {
      double val = 0.0;
      for (int i = 0; i < 3; ++i) val += quad.points[q][i] * v.values[mesh.triangles[t][i]];
      acc += quad.weights[q] * g.area * std::pow(std::abs(val), p);
    }
  }
  return std::pow(acc, 1.0 / p);
}

}  // namespace surfpoisson
