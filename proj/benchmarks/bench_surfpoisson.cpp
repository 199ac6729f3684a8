#include <benchmark/benchmark.h>

#include "surfpoisson/catalog.hpp"
#include "surfpoisson/divfield.hpp"
#include "surfpoisson/verify.hpp"

using namespace surfpoisson;

namespace {

double level_h(int level) { return 0.4 / (1 << level); }

void BM_MeshGeneration(benchmark::State& state) {
  const DomainSpec domain = DomainSpec::disk(1.0);
  const double h = level_h(static_cast<int>(state.range(0)));
  int dof = 0;
  for (auto _ : state) {
    const ParamMesh mesh = generate_mesh(domain, h);
    dof = mesh.n_vertices();
    benchmark::DoNotOptimize(mesh.vertices.data());
  }
  state.counters["dof"] = dof;
}
BENCHMARK(BM_MeshGeneration)->DenseRange(1, 3);

void BM_StiffnessAssembly(benchmark::State& state) {
  const Chart chart = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const ParamMesh mesh = generate_mesh(chart.domain, level_h(static_cast<int>(state.range(0))));
  const QuadratureRule quad = quadrature(4);
  for (auto _ : state) {
    const SparseOperator A = stiffness(chart, mesh, quad);
    benchmark::DoNotOptimize(A.matrix.valuePtr());
  }
  state.counters["dof"] = mesh.n_vertices();
}
BENCHMARK(BM_StiffnessAssembly)->DenseRange(1, 3);

void BM_MassAssembly(benchmark::State& state) {
  const Chart chart = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const ParamMesh mesh = generate_mesh(chart.domain, level_h(static_cast<int>(state.range(0))));
  const QuadratureRule quad = quadrature(4);
  for (auto _ : state) {
    const SparseOperator M = mass(chart, mesh, quad);
    benchmark::DoNotOptimize(M.matrix.valuePtr());
  }
  state.counters["dof"] = mesh.n_vertices();
}
BENCHMARK(BM_MassAssembly)->DenseRange(1, 3);

void BM_NeumannSolve(benchmark::State& state) {
  const Chart chart = make_flat_chart(DomainSpec::disk(1.0));
  const ParamMesh mesh = generate_mesh(chart.domain, 0.1);
  const QuadratureRule quad = quadrature(4);
  const SparseOperator A = stiffness(chart, mesh, quad);
  const SparseOperator M = mass(chart, mesh, quad);
  const VecX b = load(chart, mesh, quad, catalog_scalar("cos_pi_r2_forcing"));
  int iterations = 0;
  for (auto _ : state) {
    const SolveReport rep = solve_neumann(A, M, b);
    iterations = rep.iterations;
    benchmark::DoNotOptimize(rep.solution.data());
  }
  state.counters["dof"] = mesh.n_vertices();
  state.counters["cg_iters"] = iterations;
}
BENCHMARK(BM_NeumannSolve);

void BM_DivFieldConstruction(benchmark::State& state) {
  const Chart chart = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const ParamMesh mesh = generate_mesh(chart.domain, 0.1);
  const QuadratureRule quad = quadrature(4);
  const ScalarOnU F = catalog_scalar("x1");
  const ScalarOnU chi = catalog_scalar("x2");
  for (auto _ : state) {
    const DivSolveReport rep = solve_div_system(chart, mesh, quad, F, chi);
    benchmark::DoNotOptimize(rep.V.values.data());
  }
  state.counters["dof"] = mesh.n_vertices();
}
BENCHMARK(BM_DivFieldConstruction);

void BM_IdentityBattery(benchmark::State& state) {
  const Chart chart = make_hemisphere_chart(DomainSpec::disk(1.0), 2.0);
  const ParamMesh mesh = generate_mesh(chart.domain, 0.05);
  const QuadratureRule quad = quadrature(4);
  AnalyticVectorField f;
  f.value = [](const Vec2& X) { return Vec3(X.x() * X.y(), X.x() + 2.0, X.y() * X.y()); };
  f.dX1 = [](const Vec2& X) { return Vec3(X.y(), 1.0, 0.0); };
  f.dX2 = [](const Vec2& X) { return Vec3(X.x(), 0.0, 2.0 * X.y()); };
  for (auto _ : state) {
    const IdentityReport rep = check_divergence_theorem(chart, mesh, quad, f);
    benchmark::DoNotOptimize(rep.rel_defect);
  }
  state.counters["triangles"] = mesh.n_triangles();
}
BENCHMARK(BM_IdentityBattery);

}  // namespace

BENCHMARK_MAIN();
