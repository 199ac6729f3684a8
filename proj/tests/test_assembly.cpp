#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "surfpoisson/assembly.hpp"

using namespace surfpoisson;
using namespace testsupport;

namespace {

constexpr double kPi = std::numbers::pi;

double max_sparse_diff(const SparseMat& A, const SparseMat& B) {
  SparseMat D = A - B;
  double worst = 0.0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (SparseMat::InnerIterator it(D, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

// Independent planar P1 stiffness oracle: the cotangent formula. For the edge
// (i, j) opposite vertex k in a triangle, the contribution is -cot(angle at
// k)/2; diagonals make row sums vanish.
SparseMat cotangent_stiffness(const ParamMesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int vk = tri[k];
      const int vi = tri[(k + 1) % 3];
      const int vj = tri[(k + 2) % 3];
      const Vec2 u = mesh.vertices[vi] - mesh.vertices[vk];
      const Vec2 w = mesh.vertices[vj] - mesh.vertices[vk];
      const double cross = u.x() * w.y() - u.y() * w.x();
      const double cot = u.dot(w) / std::abs(cross);
      trips.emplace_back(vi, vj, -0.5 * cot);
      trips.emplace_back(vj, vi, -0.5 * cot);
      trips.emplace_back(vi, vi, 0.5 * cot);
      trips.emplace_back(vj, vj, 0.5 * cot);
    }
  }
  SparseMat A(mesh.n_vertices(), mesh.n_vertices());
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

}  // namespace

TEST_CASE("flat stiffness equals the cotangent-formula oracle") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const Chart chart = make_flat_chart(dom);
  const ParamMesh mesh = generate_mesh(dom, 0.2);
  const SparseOperator A = stiffness(chart, mesh, quadrature(2));
  CHECK(A.symmetric);
  CHECK(A.dim == mesh.n_vertices());
  CHECK(max_sparse_diff(A.matrix, cotangent_stiffness(mesh)) < 1e-12);
}

TEST_CASE("stiffness: symmetric, constant kernel, on every catalog chart") {
  for (const Chart& chart : regular_charts()) {
    CAPTURE(chart.kind);
    const ParamMesh mesh = generate_mesh(chart.domain, 0.2);
    const SparseOperator A = stiffness(chart, mesh, quadrature(4));
    CHECK(max_sparse_diff(A.matrix, SparseMat(A.matrix.transpose())) < 1e-12);
    const VecX ones = VecX::Ones(A.dim);
    CHECK((A.matrix * ones).cwiseAbs().maxCoeff() < 1e-12);
    // PSD: random Rayleigh quotients stay nonnegative
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
      const SurfaceField v = random_field(mesh, rng);
      CHECK(v.values.dot(A.matrix * v.values) > -1e-12);
    }
  }
}

TEST_CASE("mass: SPD with total measure pi on the flat disk polygon") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const Chart chart = make_flat_chart(dom);
  const ParamMesh mesh = generate_mesh(dom, 0.3);
  const SparseOperator M = mass(chart, mesh, quadrature(4));
  const VecX ones = VecX::Ones(M.dim);
  // exactly the polygon area; converges to pi at rate 2 (mesh tests cover the rate)
  CHECK(ones.dot(M.matrix * ones) == doctest::Approx(polygon_area(mesh)).epsilon(1e-12));
  const Eigen::SimplicialLLT<SparseMat> llt(M.matrix);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("mass: spherical cap area converges to the closed form at rate 2") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const Chart chart = make_hemisphere_chart(dom, 2.0);
  const double cap_area = 4.0 * kPi * (2.0 - std::sqrt(3.0));  // 2 pi R (R - sqrt(R^2-1))

  ParamMesh mesh = generate_mesh(dom, 0.2);
  const auto measure = [&](const ParamMesh& m) {
    const SparseOperator M = mass(chart, m, quadrature(4));
    const VecX ones = VecX::Ones(M.dim);
    return ones.dot(M.matrix * ones);
  };
  const double e0 = std::abs(measure(mesh) - cap_area);
  mesh = refine(mesh, dom);
  const double e1 = std::abs(measure(mesh) - cap_area);
  CHECK(std::abs(measure(mesh) - cap_area) < 5e-3);
  const double rate = std::log2(e0 / e1);
  CHECK(rate > 1.7);
  CHECK(rate < 2.4);
}

TEST_CASE("monge chart with zero height reduces to the flat operators") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.25);
  const Chart flat = make_flat_chart(dom);
  const Chart trivial = make_monge_chart(dom, {});
  CHECK(max_sparse_diff(stiffness(flat, mesh, quadrature(4)).matrix,
                        stiffness(trivial, mesh, quadrature(4)).matrix) < 1e-14);
  CHECK(max_sparse_diff(mass(flat, mesh, quadrature(4)).matrix,
                        mass(trivial, mesh, quadrature(4)).matrix) < 1e-14);
}

TEST_CASE("cylinder operators equal flat operators on the same mesh (isometry)") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.15);
  const Chart flat = make_flat_chart(dom);
  const Chart cyl = make_cylinder_chart(dom);
  CHECK(max_sparse_diff(stiffness(flat, mesh, quadrature(4)).matrix,
                        stiffness(cyl, mesh, quadrature(4)).matrix) < 1e-12);
  CHECK(max_sparse_diff(mass(flat, mesh, quadrature(4)).matrix,
                        mass(cyl, mesh, quadrature(4)).matrix) < 1e-12);
  CHECK(max_sparse_diff(boundary_mass(flat, mesh).matrix, boundary_mass(cyl, mesh).matrix) <
        1e-12);
}

TEST_CASE("assembly is invariant under triangle reordering") {
  const DomainSpec dom = DomainSpec::ellipse(1.2, 0.8);
  const Chart chart = make_monge_chart(dom, {{2, 0, 0.3}, {1, 1, 0.2}});
  const ParamMesh mesh = generate_mesh(dom, 0.2);

  ParamMesh shuffled = mesh;
  std::mt19937_64 rng(17);
  std::shuffle(shuffled.triangles.begin(), shuffled.triangles.end(), rng);
  for (auto& tri : shuffled.triangles) {
    // cyclic rotation keeps the orientation counterclockwise
    const auto t = tri;
    tri = {t[1], t[2], t[0]};
  }

  CHECK(max_sparse_diff(stiffness(chart, mesh, quadrature(4)).matrix,
                        stiffness(chart, shuffled, quadrature(4)).matrix) < 1e-12);
  CHECK(max_sparse_diff(mass(chart, mesh, quadrature(4)).matrix,
                        mass(chart, shuffled, quadrature(4)).matrix) < 1e-12);
}

TEST_CASE("load vector: zero forcing, unit forcing, compatible forcing") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const Chart chart = make_flat_chart(dom);
  ParamMesh mesh = generate_mesh(dom, 0.1);
  const QuadratureRule quad = quadrature(4);

  const VecX b0 = load(chart, mesh, quad, [](const Vec2&) { return 0.0; });
  CHECK(b0.cwiseAbs().maxCoeff() == 0.0);

  const VecX b1 = load(chart, mesh, quad, [](const Vec2&) { return 1.0; });
  CHECK(b1.sum() == doctest::Approx(polygon_area(mesh)).epsilon(1e-12));

  // F = -Lap cos(pi r^2) integrates to zero over the disk; the polygon defect
  // shrinks at rate 2
  const ScalarOnU forcing = [](const Vec2& X) {
    const double r2 = X.squaredNorm();
    return 4.0 * kPi * std::sin(kPi * r2) + 4.0 * kPi * kPi * r2 * std::cos(kPi * r2);
  };
  const double d0 = std::abs(load(chart, mesh, quad, forcing).sum());
  mesh = refine(mesh, dom);
  const double d1 = std::abs(load(chart, mesh, quad, forcing).sum());
  const double rate = std::log2(d0 / d1);
  CHECK(rate > 1.5);
  CHECK(rate < 2.5);
}

TEST_CASE("boundary mass: perimeter totals and boundary-only support") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.1);

  const SparseOperator Bf = boundary_mass(make_flat_chart(dom), mesh);
  const VecX ones = VecX::Ones(Bf.dim);
  const double polygon_perimeter = [&] {
    double len = 0.0;
    for (const BoundaryEdge& e : mesh.boundary_edges)
      len += (mesh.vertices[e.v1] - mesh.vertices[e.v0]).norm();
    return len;
  }();
  CHECK(ones.dot(Bf.matrix * ones) == doctest::Approx(polygon_perimeter).epsilon(1e-12));
  CHECK(std::abs(ones.dot(Bf.matrix * ones) - 2.0 * kPi) < 0.01);

  // entries touch boundary vertices only
  for (int k = 0; k < Bf.matrix.outerSize(); ++k)
    for (SparseMat::InnerIterator it(Bf.matrix, k); it; ++it)
      if (it.value() != 0.0) {
        REQUIRE(mesh.boundary_vertex_flags[it.row()]);
        REQUIRE(mesh.boundary_vertex_flags[it.col()]);
      }

  // spherical cap rim of radius 1 has length 2 pi regardless of the slope
  const SparseOperator Bh = boundary_mass(make_hemisphere_chart(dom, 2.0), mesh);
  CHECK(std::abs(ones.dot(Bh.matrix * ones) - 2.0 * kPi) < 0.01);
}

TEST_CASE("tangential gradient: linear reproduction, constants, tangency") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.2);

  SurfaceField x1{&mesh, VecX(mesh.n_vertices())};
  SurfaceField constant{&mesh, VecX::Constant(mesh.n_vertices(), 3.25)};
  for (int i = 0; i < mesh.n_vertices(); ++i) x1.values[i] = mesh.vertices[i].x();

  const Chart flat = make_flat_chart(dom);
  for (const Vec3& g : tangential_gradient(flat, mesh, x1).values)
    CHECK((g - Vec3(1, 0, 0)).norm() < 1e-13);
  for (const Vec3& g : tangential_gradient(flat, mesh, constant).values)
    CHECK(g.norm() < 1e-13);

  // graph charts pull the ambient coordinate x back to X1, so grad_Gamma x
  // equals the tangential projection of e1
  for (const Chart& chart : {make_hemisphere_chart(dom, 2.0),
                             make_monge_chart(dom, {{2, 0, 0.3}, {1, 1, 0.2}, {0, 3, 0.1}})}) {
    CAPTURE(chart.kind);
    const TriangleVectorField grad = tangential_gradient(chart, mesh, x1);
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const auto& tri = mesh.triangles[t];
      const Vec2 c = (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
      const MetricFrame fr = metric_frame(chart, c);
      const Vec3 expected = Vec3(1, 0, 0) - fr.n.x() * fr.n;
      REQUIRE((grad.values[t] - expected).norm() < 1e-12);
      REQUIRE(std::abs(grad.values[t].dot(fr.n)) < 1e-10);
    }
  }
}

TEST_CASE("surface divergence: planar fields and the curvature of the cylinder") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const ParamMesh mesh = generate_mesh(dom, 0.05);
  const Chart flat = make_flat_chart(dom);

  SurfaceVectorField position{&mesh, {}};
  SurfaceVectorField constant{&mesh, {}};
  position.values.resize(mesh.n_vertices());
  constant.values.resize(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    position.values[i] = Vec3(mesh.vertices[i].x(), mesh.vertices[i].y(), 0.0);
    constant.values[i] = Vec3(0.3, -1.2, 0.7);
  }
  for (const double d : surface_divergence(flat, mesh, position).values)
    CHECK(d == doctest::Approx(2.0).epsilon(1e-12));
  for (const double d : surface_divergence(flat, mesh, constant).values)
    CHECK(std::abs(d) < 1e-12);

  // div_Gamma n = 1 on the unit cylinder, so H = -1 there
  const Chart cyl = make_cylinder_chart(dom);
  SurfaceVectorField nfield{&mesh, {}};
  nfield.values.resize(mesh.n_vertices());
  for (int i = 0; i < mesh.n_vertices(); ++i)
    nfield.values[i] = metric_frame(cyl, mesh.vertices[i]).n;
  for (const double d : surface_divergence(cyl, mesh, nfield).values)
    CHECK(d == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("norms: zero field, homogeneity, flat-disk values") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const Chart chart = make_flat_chart(dom);
  const ParamMesh mesh = generate_mesh(dom, 0.05);
  const QuadratureRule quad = quadrature(4);

  SurfaceField zero{&mesh, VecX::Zero(mesh.n_vertices())};
  CHECK(lp_norm(chart, mesh, quad, zero, 2.0) == 0.0);
  CHECK(h1_seminorm(chart, mesh, quad, zero) == 0.0);
  CHECK(boundary_lp_norm(chart, mesh, zero, 2.0) == 0.0);

  SurfaceField one{&mesh, VecX::Ones(mesh.n_vertices())};
  CHECK(lp_norm(chart, mesh, quad, one, 2.0) ==
        doctest::Approx(std::sqrt(polygon_area(mesh))).epsilon(1e-12));

  SurfaceField x1{&mesh, VecX(mesh.n_vertices())};
  for (int i = 0; i < mesh.n_vertices(); ++i) x1.values[i] = mesh.vertices[i].x();
  CHECK(std::abs(lp_norm(chart, mesh, quad, x1, 2.0) - std::sqrt(kPi / 4.0)) < 5e-3);

  std::mt19937_64 rng(23);
  const SurfaceField v = random_field(mesh, rng);
  SurfaceField scaled{&mesh, -2.5 * v.values};
  for (const double p : {1.0, 2.0, 4.0}) {
    CHECK(lp_norm(chart, mesh, quad, scaled, p) ==
          doctest::Approx(2.5 * lp_norm(chart, mesh, quad, v, p)).epsilon(1e-12));
    CHECK(boundary_lp_norm(chart, mesh, scaled, p) ==
          doctest::Approx(2.5 * boundary_lp_norm(chart, mesh, v, p)).epsilon(1e-12));
  }
}

TEST_CASE("h1 seminorm squares to the stiffness quadratic form") {
  for (const Chart& chart : regular_charts()) {
    CAPTURE(chart.kind);
    const ParamMesh mesh = generate_mesh(chart.domain, 0.2);
    const QuadratureRule quad = quadrature(4);
    const SparseOperator A = stiffness(chart, mesh, quad);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
      const SurfaceField v = random_field(mesh, rng);
      const double semi = h1_seminorm(chart, mesh, quad, v);
      const double quad_form = v.values.dot(A.matrix * v.values);
      REQUIRE(semi * semi == doctest::Approx(quad_form).epsilon(1e-10));
    }
  }
}

TEST_CASE("norm equivalence on the hemisphere: sampled metric bounds hold") {
  const DomainSpec dom = DomainSpec::disk(1.0);
  const Chart chart = make_hemisphere_chart(dom, 2.0);
  const ParamMesh mesh = generate_mesh(dom, 0.1);
  const QuadratureRule quad = quadrature(4);

  // analytic extremes of sqrtG = R / sqrt(R^2 - r^2) over the closed patch
  const double lambda_min = 1.0;
  const double lambda_max = 2.0 / std::sqrt(3.0);

  std::mt19937_64 rng(77);
  for (int k = 0; k < 100; ++k) {
    const SurfaceField v = random_field(mesh, rng);
    for (const double p : {1.0, 2.0, 4.0}) {
      const double flat_norm = lp_norm_param(mesh, quad, v, p);
      const double surf_norm = lp_norm(chart, mesh, quad, v, p);
      REQUIRE(surf_norm >= std::pow(lambda_min, 1.0 / p) * flat_norm * (1.0 - 1e-12));
      REQUIRE(surf_norm <= std::pow(lambda_max, 1.0 / p) * flat_norm * (1.0 + 1e-12));
    }
  }
}
