#include "surfpoisson/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace surfpoisson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double tri_signed_area(const Vec2& p0, const Vec2& p1, const Vec2& p2) {
  return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

/// Equal-arc-length angle placement: phi(u) with arclen(0..phi(u)) = u/2pi * L.
/// Identity for disks. The distribution is shared by all concentric rings.
class ArcParam {
 public:
  explicit ArcParam(const DomainSpec& dom) {
    if (dom.kind == DomainKind::disk || dom.a == dom.b) return;
    const int n = 8192;
    cum_.resize(n + 1);
    cum_[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double t0 = kTwoPi * (i - 1) / n;
      const double t1 = kTwoPi * i / n;
      cum_[i] = cum_[i - 1] +
                0.5 * (dom.boundary_speed(t0) + dom.boundary_speed(t1)) * (t1 - t0);
    }
  }

  double operator()(double u) const {
    if (cum_.empty()) return u;
    const double target = u / kTwoPi * cum_.back();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    const auto hi = std::min<size_t>(cum_.size() - 1,
                                     static_cast<size_t>(it - cum_.begin()));
    if (hi == 0) return 0.0;
    const size_t lo = hi - 1;
    const double seg = cum_[hi] - cum_[lo];
    const double frac = seg > 0.0 ? (target - cum_[lo]) / seg : 0.0;
    const int n = static_cast<int>(cum_.size()) - 1;
    return kTwoPi * (static_cast<double>(lo) + frac) / n;
  }

 private:
  std::vector<double> cum_;
};

/// Triangulates the annulus between two concentric CCW rings by a two-pointer
/// merge; when both pointers can advance the shorter physical diagonal wins.
void stitch_rings(const std::vector<Vec2>& pts, const std::vector<int>& inner,
                  const std::vector<int>& outer, std::vector<std::array<int, 3>>& tris) {
  const int m = static_cast<int>(inner.size());
  const int M = static_cast<int>(outer.size());
  int i = 0, o = 0;
  while (i < m || o < M) {
    const bool can_inner = i < m;
    const bool can_outer = o < M;
    bool advance_inner;
    if (!can_inner) {
      advance_inner = false;
    } else if (!can_outer) {
      advance_inner = true;
    } else {
      const Vec2& pi_next = pts[inner[(i + 1) % m]];
      const Vec2& po_next = pts[outer[(o + 1) % M]];
      const double d_inner = (pi_next - pts[outer[o % M]]).squaredNorm();
      const double d_outer = (po_next - pts[inner[i % m]]).squaredNorm();
      advance_inner = d_inner <= d_outer;
    }
    if (advance_inner) {
      tris.push_back({inner[i % m], outer[o % M], inner[(i + 1) % m]});
      ++i;
    } else {
      tris.push_back({inner[i % m], outer[o % M], outer[(o + 1) % M]});
      ++o;
    }
  }
}

void build_boundary(ParamMesh& mesh, const DomainSpec& domain,
                    const std::vector<int>& ring, const std::vector<double>& ring_s) {
  const int m = static_cast<int>(ring.size());
  mesh.boundary_vertex_flags.assign(mesh.vertices.size(), false);
  mesh.boundary_params.assign(mesh.vertices.size(),
                              std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < m; ++j) {
    mesh.boundary_vertex_flags[ring[j]] = true;
    mesh.boundary_params[ring[j]] = ring_s[j];
  }
  mesh.boundary_edges.clear();
  mesh.boundary_edges.reserve(m);
  (void)domain;
  for (int j = 0; j < m; ++j) {
    BoundaryEdge e;
    e.v0 = ring[j];
    e.v1 = ring[(j + 1) % m];
    e.s0 = ring_s[j];
    e.s1 = ring_s[(j + 1) % m];
    const Vec2 d = mesh.vertices[e.v1] - mesh.vertices[e.v0];
    e.normal = Vec2(d.y(), -d.x()).normalized();
    mesh.boundary_edges.push_back(e);
  }
}

}  // namespace

std::vector<int> ParamMesh::boundary_vertices() const {
  std::vector<int> out;
  for (int i = 0; i < n_vertices(); ++i)
    if (boundary_vertex_flags[i]) out.push_back(i);
  return out;
}

ParamMesh generate_mesh(const DomainSpec& domain, double h) {
  if (!(h > 0.0) || !(h < domain.diameter()))
    throw MeshFailure("target edge length must satisfy 0 < h < domain diameter");

  const double L = domain.perimeter();
  const int K = std::max({1, static_cast<int>(std::ceil(std::max(domain.a, domain.b) / h)),
                          static_cast<int>(std::ceil(L / (6.0 * h)))});
  const ArcParam phi(domain);

  ParamMesh mesh;
  mesh.h_target = h;
  mesh.vertices.push_back(domain.center);
  std::vector<int> prev_ring;
  std::vector<int> ring;
  std::vector<double> ring_s;
  for (int k = 1; k <= K; ++k) {
    const int mk = 6 * k;
    const double t = static_cast<double>(k) / K;
    ring.clear();
    ring_s.clear();
    for (int j = 0; j < mk; ++j) {
      const double s = phi(kTwoPi * j / mk);
      const Vec2 rim = domain.boundary_point(s);
      ring.push_back(static_cast<int>(mesh.vertices.size()));
      ring_s.push_back(s);
      mesh.vertices.push_back(k == K ? rim : Vec2(domain.center + t * (rim - domain.center)));
    }
    if (k == 1) {
      for (int j = 0; j < 6; ++j)
        mesh.triangles.push_back({0, ring[j], ring[(j + 1) % 6]});
    } else {
      stitch_rings(mesh.vertices, prev_ring, ring, mesh.triangles);
    }
    prev_ring = ring;
  }
  build_boundary(mesh, domain, ring, ring_s);

  check_mesh(mesh, domain);
  const MeshQuality q = mesh_quality(mesh);
  if (q.max_edge > 1.5 * h || q.min_angle_deg < 20.0)
    throw MeshFailure("quality targets unreachable at requested h (max edge " +
                      std::to_string(q.max_edge) + ", min angle " +
                      std::to_string(q.min_angle_deg) + " deg)");
  return mesh;
}

ParamMesh refine(const ParamMesh& mesh, const DomainSpec& domain) {
  ParamMesh out;
  out.h_target = mesh.h_target / 2.0;
  out.vertices = mesh.vertices;
  out.boundary_vertex_flags = mesh.boundary_vertex_flags;
  out.boundary_params = mesh.boundary_params;

  std::set<std::pair<int, int>> boundary_set;
  for (const auto& e : mesh.boundary_edges)
    boundary_set.insert(std::minmax(e.v0, e.v1));

  std::map<std::pair<int, int>, int> midpoint;
  auto midpoint_of = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    if (const auto it = midpoint.find(key); it != midpoint.end()) return it->second;
    Vec2 X = 0.5 * (out.vertices[a] + out.vertices[b]);
    const bool on_boundary = boundary_set.count(key) > 0;
    double s = std::numeric_limits<double>::quiet_NaN();
    if (on_boundary) {
      X = domain.project_to_boundary(X);
      s = domain.boundary_parameter(X);
    }
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(X);
    out.boundary_vertex_flags.push_back(on_boundary);
    out.boundary_params.push_back(s);
    midpoint.emplace(key, idx);
    return idx;
  };

  out.triangles.reserve(mesh.triangles.size() * 4);
  for (const auto& t : mesh.triangles) {
    const int m01 = midpoint_of(t[0], t[1]);
    const int m12 = midpoint_of(t[1], t[2]);
    const int m20 = midpoint_of(t[2], t[0]);
    out.triangles.push_back({t[0], m01, m20});
    out.triangles.push_back({m01, t[1], m12});
    out.triangles.push_back({m20, m12, t[2]});
    out.triangles.push_back({m01, m12, m20});
  }

  out.boundary_edges.reserve(mesh.boundary_edges.size() * 2);
  for (const auto& e : mesh.boundary_edges) {
    const int m = midpoint[std::minmax(e.v0, e.v1)];
    const double sm = out.boundary_params[m];
    for (const auto& [v0, v1, s0, s1] :
         {std::tuple{e.v0, m, e.s0, sm}, std::tuple{m, e.v1, sm, e.s1}}) {
      BoundaryEdge half;
      half.v0 = v0;
      half.v1 = v1;
      half.s0 = s0;
      half.s1 = s1;
      const Vec2 d = out.vertices[v1] - out.vertices[v0];
      half.normal = Vec2(d.y(), -d.x()).normalized();
      out.boundary_edges.push_back(half);
    }
  }

  check_mesh(out, domain);
  return out;
}

MeshQuality mesh_quality(const ParamMesh& mesh) {
  MeshQuality q;
  q.min_area = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles) {
    const Vec2& p0 = mesh.vertices[t[0]];
    const Vec2& p1 = mesh.vertices[t[1]];
    const Vec2& p2 = mesh.vertices[t[2]];
    q.min_area = std::min(q.min_area, tri_signed_area(p0, p1, p2));
    const double e0 = (p1 - p0).norm();
    const double e1 = (p2 - p1).norm();
    const double e2 = (p0 - p2).norm();
    q.max_edge = std::max({q.max_edge, e0, e1, e2});
    auto angle = [](const Vec2& a, const Vec2& b, const Vec2& c) {
      const Vec2 u = b - a, v = c - a;
      return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
    };
    const double deg = 180.0 / std::numbers::pi;
    q.min_angle_deg = std::min({q.min_angle_deg, deg * angle(p0, p1, p2),
                                deg * angle(p1, p2, p0), deg * angle(p2, p0, p1)});
  }
  return q;
}

int euler_characteristic(const ParamMesh& mesh) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles) {
    edges.insert(std::minmax(t[0], t[1]));
    edges.insert(std::minmax(t[1], t[2]));
    edges.insert(std::minmax(t[2], t[0]));
  }
  return mesh.n_vertices() - static_cast<int>(edges.size()) + mesh.n_triangles();
}

void check_mesh(const ParamMesh& mesh, const DomainSpec& domain) {
  if (mesh.boundary_vertex_flags.size() != mesh.vertices.size() ||
      mesh.boundary_params.size() != mesh.vertices.size())
    throw MeshFailure("per-vertex boundary arrays out of sync");

  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : mesh.triangles) {
    if (!(tri_signed_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) > 0.0))
      throw MeshFailure("non-positive triangle orientation");
    ++edge_count[std::minmax(t[0], t[1])];
    ++edge_count[std::minmax(t[1], t[2])];
    ++edge_count[std::minmax(t[2], t[0])];
  }

  std::set<std::pair<int, int>> boundary_set;
  for (const auto& e : mesh.boundary_edges) boundary_set.insert(std::minmax(e.v0, e.v1));
  for (const auto& [edge, count] : edge_count) {
    if (count > 2) throw MeshFailure("edge shared by more than two triangles");
    if (count == 1 && boundary_set.count(edge) == 0)
      throw MeshFailure("naked edge missing from the boundary list");
    if (count == 2 && boundary_set.count(edge) > 0)
      throw MeshFailure("interior edge listed as boundary");
  }

  std::map<int, int> out_deg, in_deg;
  for (const auto& e : mesh.boundary_edges) {
    ++out_deg[e.v0];
    ++in_deg[e.v1];
    if (std::abs(e.normal.norm() - 1.0) > 1e-12)
      throw MeshFailure("boundary normal not unit");
    const Vec2 mid = 0.5 * (mesh.vertices[e.v0] + mesh.vertices[e.v1]);
    if (e.normal.dot(mid - domain.center) <= 0.0)
      throw MeshFailure("boundary normal does not point out of U");
    for (const int v : {e.v0, e.v1}) {
      if (!mesh.boundary_vertex_flags[v]) throw MeshFailure("boundary edge on interior vertex");
      const Vec2 u((mesh.vertices[v].x() - domain.center.x()) / domain.a,
                   (mesh.vertices[v].y() - domain.center.y()) / domain.b);
      if (std::abs(u.norm() - 1.0) > 1e-12)
        throw MeshFailure("boundary vertex off the domain boundary");
      if (!std::isfinite(mesh.boundary_params[v]))
        throw MeshFailure("boundary vertex without arc parameter");
    }
  }
  for (const auto& [v, d] : out_deg)
    if (d != 1 || in_deg.count(v) == 0 || in_deg[v] != 1)
      throw MeshFailure("boundary edges do not form closed loops");
  if (in_deg.size() != out_deg.size())
    throw MeshFailure("boundary edges do not form closed loops");

  if (euler_characteristic(mesh) != 1)
    throw MeshFailure("Euler characteristic differs from 1");
}

}  // namespace surfpoisson
