#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "surfpoisson/geometry.hpp"
#include "surfpoisson/mesh.hpp"

using namespace surfpoisson;
using namespace testsupport;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("domain: disk basics") {
  const DomainSpec disk = DomainSpec::disk(2.0, Vec2(0.3, -0.1));
  CHECK(disk.area() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(disk.perimeter() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(disk.diameter() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(disk.contains(Vec2(0.3, -0.1)));
  CHECK(disk.contains(Vec2(2.29, -0.1)));
  CHECK_FALSE(disk.contains(Vec2(2.5, -0.1)));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> us(0.0, 2.0 * kPi);
  for (int k = 0; k < 50; ++k) {
    const double s = us(rng);
    const Vec2 p = disk.boundary_point(s);
    CHECK((p - disk.center).norm() == doctest::Approx(2.0).epsilon(1e-13));
    const Vec2 n = disk.boundary_normal(s);
    CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-13));
    // normal is perpendicular to the finite-difference boundary tangent
    const double ds = 1e-6;
    const Vec2 tangent = (disk.boundary_point(s + ds) - disk.boundary_point(s - ds)) / (2 * ds);
    CHECK(std::abs(n.dot(tangent.normalized())) < 1e-8);
    CHECK(disk.boundary_speed(s) == doctest::Approx(tangent.norm()).epsilon(1e-8));
  }
}

TEST_CASE("domain: ellipse perimeter matches the elliptic-integral value") {
  const DomainSpec ell = DomainSpec::ellipse(2.0, 1.0);
  // 8 a E(m), m = 1 - b^2/a^2, halved: 4 a E(m)
  CHECK(ell.perimeter() == doctest::Approx(9.6884482205476762).epsilon(1e-10));
  CHECK(ell.area() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("domain: projection lands on the boundary and round-trips the parameter") {
  for (const DomainSpec& dom :
       {DomainSpec::disk(1.0), DomainSpec::ellipse(2.0, 1.0, Vec2(0.5, 0.25))}) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
      const Vec2 X = random_domain_point(dom, rng);
      if ((X - dom.center).norm() < 1e-6) continue;
      const Vec2 p = dom.project_to_boundary(X);
      const Vec2 q = (p - dom.center).cwiseQuotient(Vec2(dom.a, dom.b));
      CHECK(q.norm() == doctest::Approx(1.0).epsilon(1e-12));
      const double s = dom.boundary_parameter(X);
      CHECK((dom.boundary_point(s) - p).norm() < 1e-12);
    }
  }
}

TEST_CASE("chart jacobians match finite differences at 1000 random points") {
  for (const Chart& chart : regular_charts()) {
    CAPTURE(chart.kind);
    std::mt19937_64 rng(42);
    const double step = 1e-5;
    for (int k = 0; k < 1000; ++k) {
      const Vec2 X = random_domain_point(chart.domain, rng);
      Vec3 a1, a2, f1, f2;
      chart.jacobian(X, a1, a2);
      fd_jacobian(chart, X, step, f1, f2);
      const double scale = std::max({a1.norm(), a2.norm(), 1.0});
      REQUIRE((a1 - f1).norm() / scale < 1e-6);
      REQUIRE((a2 - f2).norm() / scale < 1e-6);
    }
  }
}

TEST_CASE("chart hessians match finite differences of the jacobian") {
  for (const Chart& chart : regular_charts()) {
    CAPTURE(chart.kind);
    std::mt19937_64 rng(43);
    const double step = 1e-5;
    for (int k = 0; k < 100; ++k) {
      const Vec2 X = random_domain_point(chart.domain, rng);
      Vec3 h11, h12, h22;
      chart.hessian(X, h11, h12, h22);
      const Vec2 e1(1, 0), e2(0, 1);
      Vec3 a1p, a2p, a1m, a2m;
      chart.jacobian(X + step * e1, a1p, a2p);
      chart.jacobian(X - step * e1, a1m, a2m);
      const Vec3 f11 = (a1p - a1m) / (2 * step);
      const Vec3 f12 = (a2p - a2m) / (2 * step);
      chart.jacobian(X + step * e2, a1p, a2p);
      chart.jacobian(X - step * e2, a1m, a2m);
      const Vec3 f22 = (a2p - a2m) / (2 * step);
      REQUIRE((h11 - f11).norm() < 1e-5);
      REQUIRE((h12 - f12).norm() < 1e-5);
      REQUIRE((h22 - f22).norm() < 1e-5);
    }
  }
}

TEST_CASE("flat chart frame is exactly planar") {
  const Chart chart = make_flat_chart(DomainSpec::disk(1.0));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const MetricFrame fr = metric_frame(chart, random_domain_point(chart.domain, rng));
    CHECK(fr.G == 1.0);
    CHECK(fr.sqrtG == 1.0);
    CHECK(fr.H == 0.0);
    CHECK(fr.n == Vec3(0, 0, 1));
    CHECK((fr.g_upper - Mat2::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("metric inverse really inverts g_lower at every downstream quadrature point") {
  const QuadratureRule quad = quadrature(4);
  for (const Chart& chart : regular_charts()) {
    CAPTURE(chart.kind);
    const ParamMesh mesh = generate_mesh(chart.domain, 0.2);
    for (const auto& tri : mesh.triangles) {
      for (std::size_t q = 0; q < quad.points.size(); ++q) {
        Vec2 X = Vec2::Zero();
        for (int c = 0; c < 3; ++c) X += quad.points[q][c] * mesh.vertices[tri[c]];
        const MetricFrame fr = metric_frame(chart, X);
        const Mat2 prod = fr.g_upper * fr.g_lower;
        REQUIRE((prod - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(fr.sqrtG > 0.0);
        REQUIRE(fr.n.norm() == doctest::Approx(1.0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("co-normal is unit and perpendicular to the surface normal on the boundary") {
  const EdgeQuadrature eq = edge_quadrature();
  for (const Chart& chart : regular_charts()) {
    CAPTURE(chart.kind);
    const ParamMesh mesh = generate_mesh(chart.domain, 0.2);
    for (const BoundaryEdge& e : mesh.boundary_edges) {
      const Vec2 a = mesh.vertices[e.v0];
      const Vec2 b = mesh.vertices[e.v1];
      for (int q = 0; q < 3; ++q) {
        const Vec2 X = a + eq.t[q] * (b - a);
        const Vec3 nu = conormal_at(chart, X, e.normal);
        const MetricFrame fr = metric_frame(chart, X);
        REQUIRE(nu.norm() == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(std::abs(nu.dot(fr.n)) < 1e-12);
        REQUIRE(boundary_line_element(chart, X, e.normal) > 0.0);
      }
    }
  }
}

TEST_CASE("frozen frame values: monge patch") {
  // z = 0.3 X1^2 + 0.2 X1 X2 + 0.1 X2^3 at X = (0.4, -0.3); symbolic oracle
  const Chart chart = make_monge_chart(DomainSpec::ellipse(1.2, 0.8),
                                       {{2, 0, 0.3}, {1, 1, 0.2}, {0, 3, 0.1}});
  const MetricFrame fr = metric_frame(chart, Vec2(0.4, -0.3));
  CHECK(fr.sqrtG == doctest::Approx(1.0216892874059119).epsilon(1e-13));
  CHECK(fr.H == doctest::Approx(0.38756449232235661).epsilon(1e-12));
  CHECK(fr.n.x() == doctest::Approx(-0.17617880721547287).epsilon(1e-13));
  CHECK(fr.n.y() == doctest::Approx(-0.10472851317808665).epsilon(1e-13));
  CHECK(fr.n.z() == doctest::Approx(0.97877115119707149).epsilon(1e-13));
  CHECK(fr.g_upper(0, 0) == doctest::Approx(0.96896102788813325).epsilon(1e-13));
  CHECK(fr.g_upper(0, 1) == doctest::Approx(-0.018450944533165238).epsilon(1e-12));
  CHECK(fr.g_upper(1, 1) == doctest::Approx(0.98903193852750733).epsilon(1e-13));
}

TEST_CASE("frozen frame values: hemisphere graph") {
  const Chart chart = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const MetricFrame fr = metric_frame(chart, Vec2(0.3, 0.4));
  CHECK(fr.sqrtG == doctest::Approx(1.0327955589886445).epsilon(1e-13));
  CHECK(fr.n.x() == doctest::Approx(0.15).epsilon(1e-13));
  CHECK(fr.n.y() == doctest::Approx(0.20).epsilon(1e-13));
  CHECK(fr.n.z() == doctest::Approx(0.96824583655185422).epsilon(1e-13));
  CHECK(mean_curvature(chart, Vec2(0.3, 0.4)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(mean_curvature(chart, Vec2(0.0, 0.0)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("mean curvature: cylinder is -1, monge with zero coefficients is flat") {
  const Chart cyl = make_cylinder_chart(DomainSpec::disk(1.0));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const Vec2 X = random_domain_point(cyl.domain, rng);
    CHECK(mean_curvature(cyl, X) == doctest::Approx(-1.0).epsilon(1e-12));
    const MetricFrame fr = metric_frame(cyl, X);
    CHECK(fr.sqrtG == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((fr.g_lower - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }

  const Chart trivial = make_monge_chart(DomainSpec::disk(1.0), {});
  const MetricFrame fr = metric_frame(trivial, Vec2(0.2, 0.4));
  CHECK(fr.G == 1.0);
  CHECK(fr.H == 0.0);
}

TEST_CASE("frozen co-normal: hemisphere rim points down-slope") {
  const Chart chart = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const Vec3 nu = conormal(chart, 0.0);  // boundary point (1, 0)
  CHECK(nu.x() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
  CHECK(std::abs(nu.y()) < 1e-13);
  CHECK(nu.z() == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("degenerate fold chart fails loudly") {
  const Chart fold = make_degenerate_chart(DomainSpec::disk(1.0));
  CHECK_THROWS_AS((void)metric_frame(fold, Vec2(0.3, 0.0)), DegenerateMetric);
  // the boundary point (1, 0) sits on the fold line: the metric check trips
  // before the zero-tangent check, so a typed Error of either kind is the
  // contract here
  CHECK_THROWS_AS((void)conormal(fold, 0.0), Error);
  // the zero-tangent guard itself, hit via a degenerate boundary direction on
  // a healthy chart
  CHECK_THROWS_AS(
      (void)conormal_at(make_flat_chart(DomainSpec::disk(1.0)), Vec2(0.2, 0.1), Vec2::Zero()),
      ZeroTangent);
  const ValidationReport rep = validate_chart(fold, 32);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.worst_points.empty());
}

TEST_CASE("validate_chart: sampled metric extremes match closed forms") {
  const Chart flat = make_flat_chart(DomainSpec::disk(1.0));
  const ValidationReport rf = validate_chart(flat, 32);
  CHECK(rf.pass);
  CHECK(rf.lambda_min_est == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rf.lambda_0_est == doctest::Approx(1.0).epsilon(1e-13));

  const Chart hemi = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const ValidationReport rh = validate_chart(hemi, 64);
  CHECK(rh.pass);
  // min |g1 x g2| = 1 at the pole; min eigenvalue of g_upper = 3/4 on the rim
  CHECK(rh.lambda_min_est == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rh.lambda_0_est == doctest::Approx(0.75).epsilon(1e-12));
}
