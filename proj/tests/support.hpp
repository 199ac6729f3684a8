#pragma once

// Shared helpers for the unit tests: chart/mesh fixtures, finite-difference
// oracles, and deterministic random fields.

#include <cmath>
#include <random>
#include <vector>

#include "surfpoisson/assembly.hpp"
#include "surfpoisson/geometry.hpp"
#include "surfpoisson/mesh.hpp"

namespace testsupport {

using namespace surfpoisson;

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) / scale;
}

// Every regular catalog chart over a domain that exercises it, for
// property-style sweeps. The degenerate fold is excluded on purpose: its
// metric is singular by design and tested separately.
inline std::vector<Chart> regular_charts() {
  std::vector<Chart> charts;
  charts.push_back(make_flat_chart(DomainSpec::disk(1.0)));
  charts.push_back(make_monge_chart(DomainSpec::ellipse(1.2, 0.8),
                                    {{2, 0, 0.3}, {1, 1, 0.2}, {0, 3, 0.1}}));
  charts.push_back(make_hemisphere_chart(DomainSpec::disk(1.0), 2.0));
  charts.push_back(make_cylinder_chart(DomainSpec::disk(1.0)));
  return charts;
}

// Uniform point in the chart's domain (rejection from the bounding box).
inline Vec2 random_domain_point(const DomainSpec& domain, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-domain.a, domain.a);
  std::uniform_real_distribution<double> uy(-domain.b, domain.b);
  for (;;) {
    const Vec2 X = domain.center + Vec2(ux(rng), uy(rng));
    if (domain.contains(X, -1e-9)) return X;  // strictly inside
  }
}

// Central-difference jacobian of chart.position, the independent oracle for
// the analytic jacobian evaluators.
inline void fd_jacobian(const Chart& chart, const Vec2& X, double step, Vec3& d1, Vec3& d2) {
  const Vec2 e1(1.0, 0.0), e2(0.0, 1.0);
  d1 = (chart.position(X + step * e1) - chart.position(X - step * e1)) / (2.0 * step);
  d2 = (chart.position(X + step * e2) - chart.position(X - step * e2)) / (2.0 * step);
}

inline SurfaceField random_field(const ParamMesh& mesh, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SurfaceField v;
  v.mesh = &mesh;
  v.values.resize(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) v.values[i] = u(rng);
  return v;
}

inline double polygon_area(const ParamMesh& mesh) {
  double area = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec2 a = mesh.vertices[tri[0]];
    const Vec2 b = mesh.vertices[tri[1]];
    const Vec2 c = mesh.vertices[tri[2]];
    area += 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
  }
  return area;
}

}  // namespace testsupport
