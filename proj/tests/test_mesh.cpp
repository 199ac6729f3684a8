#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "surfpoisson/mesh.hpp"

using namespace surfpoisson;
using namespace testsupport;

namespace {
constexpr double kPi = std::numbers::pi;

double max_boundary_offset(const ParamMesh& mesh, const DomainSpec& dom) {
  double worst = 0.0;
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    if (!mesh.boundary_vertex_flags[i]) continue;
    const Vec2 q = (mesh.vertices[i] - dom.center).cwiseQuotient(Vec2(dom.a, dom.b));
    worst = std::max(worst, std::abs(q.norm() - 1.0));
  }
  return worst;
}
}  // namespace

TEST_CASE("unit disk mesh: boundary vertices on the circle, invariants hold") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.5);
  CHECK_NOTHROW(check_mesh(mesh, dom));
  CHECK(euler_characteristic(mesh) == 1);
  CHECK(max_boundary_offset(mesh, dom) < 1e-12);
  CHECK(mesh.h_target == 0.5);
  CHECK(mesh.n_triangles() > 0);

  const MeshQuality q = mesh_quality(mesh);
  CHECK(q.max_edge <= 1.5 * 0.5);
  CHECK(q.min_angle_deg >= 20.0);
  CHECK(q.min_area > 0.0);
}

TEST_CASE("ellipse mesh: boundary vertices satisfy the ellipse equation") {
  const DomainSpec dom = DomainSpec::ellipse(2.0, 1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.25);
  CHECK_NOTHROW(check_mesh(mesh, dom));
  CHECK(max_boundary_offset(mesh, dom) < 1e-12);
  const MeshQuality q = mesh_quality(mesh);
  CHECK(q.max_edge <= 1.5 * 0.25);
  CHECK(q.min_angle_deg >= 20.0);
}

TEST_CASE("mesh quality targets hold across domains and sizes") {
  for (const DomainSpec& dom : {DomainSpec::disk(1.0), DomainSpec::disk(2.0, Vec2(0.5, -0.5)),
                                DomainSpec::ellipse(1.2, 0.8), DomainSpec::ellipse(2.0, 1.0)}) {
    for (const double h : {0.4, 0.2, 0.1, 0.05}) {
      const ParamMesh mesh = generate_mesh(dom, h);
      CAPTURE(h);
      const MeshQuality q = mesh_quality(mesh);
      REQUIRE(q.max_edge <= 1.5 * h);
      REQUIRE(q.min_angle_deg >= 20.0);
      REQUIRE_NOTHROW(check_mesh(mesh, dom));
      REQUIRE(euler_characteristic(mesh) == 1);
    }
  }
}

TEST_CASE("triangle areas converge to the domain area at rate 2") {
  for (const DomainSpec& dom : {DomainSpec::disk(1.0), DomainSpec::ellipse(2.0, 1.0)}) {
    const double exact = dom.area();
    ParamMesh mesh = generate_mesh(dom, 0.4);
    double prev = std::abs(polygon_area(mesh) - exact);
    for (int level = 0; level < 2; ++level) {
      mesh = refine(mesh, dom);
      const double err = std::abs(polygon_area(mesh) - exact);
      const double rate = std::log2(prev / err);
      CAPTURE(level);
      CHECK(rate == doctest::Approx(2.0).epsilon(0.1));
      prev = err;
    }
  }
}

TEST_CASE("refine: 1->4 split, projected boundary midpoints, preserved invariants") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh coarse = generate_mesh(dom, 0.4);
  const ParamMesh fine = refine(coarse, dom);

  CHECK(fine.n_triangles() == 4 * coarse.n_triangles());
  CHECK(fine.h_target == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(static_cast<int>(fine.boundary_edges.size()) == 2 * static_cast<int>(coarse.boundary_edges.size()));
  CHECK_NOTHROW(check_mesh(fine, dom));
  CHECK(euler_characteristic(fine) == 1);
  CHECK(max_boundary_offset(fine, dom) < 1e-12);

  // uniform refinement cannot degrade shape much; boundary projection only
  // perturbs the rim triangles
  const MeshQuality q = mesh_quality(fine);
  CHECK(q.min_angle_deg >= 20.0);
  CHECK(q.max_edge <= 0.75 * mesh_quality(coarse).max_edge);
}

TEST_CASE("boundary edge normals equal the analytic normal at the chord midpoint") {
  // For an ellipse the chord P(s1)-P(s0) is exactly parallel to P'((s0+s1)/2)
  // (sum-to-product identities), and the chord midpoint has stretched-angle
  // parameter (s0+s1)/2 exactly. So the stored chord perpendicular must match
  // the analytic outward normal there to roundoff, at every resolution.
  const DomainSpec dom = DomainSpec::ellipse(2.0, 1.0);
  ParamMesh mesh = generate_mesh(dom, 0.2);

  const auto worst_normal_error = [&](const ParamMesh& m) {
    double worst = 0.0;
    for (const BoundaryEdge& e : m.boundary_edges) {
      const Vec2 mid = 0.5 * (m.vertices[e.v0] + m.vertices[e.v1]);
      const Vec2 exact = dom.boundary_normal(dom.boundary_parameter(mid));
      worst = std::max(worst, (e.normal - exact).norm());
    }
    return worst;
  };

  CHECK(worst_normal_error(mesh) < 1e-12);
  mesh = refine(mesh, dom);
  CHECK(worst_normal_error(mesh) < 1e-12);
}

TEST_CASE("mesh generation is deterministic") {
  const DomainSpec dom = DomainSpec::ellipse(1.2, 0.8);
  const ParamMesh a = generate_mesh(dom, 0.11);
  const ParamMesh b = generate_mesh(dom, 0.11);
  REQUIRE(a.n_vertices() == b.n_vertices());
  REQUIRE(a.n_triangles() == b.n_triangles());
  for (int i = 0; i < a.n_vertices(); ++i) CHECK(a.vertices[i] == b.vertices[i]);
  for (int t = 0; t < a.n_triangles(); ++t) CHECK(a.triangles[t] == b.triangles[t]);
}

TEST_CASE("invalid mesh sizes are rejected") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  CHECK_THROWS_AS((void)generate_mesh(dom, 0.0), MeshFailure);
  CHECK_THROWS_AS((void)generate_mesh(dom, -0.1), MeshFailure);
  CHECK_THROWS_AS((void)generate_mesh(dom, 5.0), MeshFailure);
}

TEST_CASE("boundary_vertices agrees with the flags") {
  const ParamMesh mesh = generate_mesh(DomainSpec::disk(1.0), 0.3);
  const std::vector<int> ids = mesh.boundary_vertices();
  int flagged = 0;
  for (int i = 0; i < mesh.n_vertices(); ++i)
    if (mesh.boundary_vertex_flags[i]) ++flagged;
  CHECK(static_cast<int>(ids.size()) == flagged);
  for (const int i : ids) CHECK(mesh.boundary_vertex_flags[i]);
  // one closed loop: as many boundary edges as boundary vertices
  CHECK(ids.size() == mesh.boundary_edges.size());
}
