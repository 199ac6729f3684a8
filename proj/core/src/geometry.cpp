#include "surfpoisson/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "surfpoisson/parallel.hpp"

namespace surfpoisson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double s) {
  s = std::fmod(s, kTwoPi);
  return s < 0.0 ? s + kTwoPi : s;
}

}  // namespace

const char* tool_version() {
#ifdef SURFPOISSON_VERSION_STRING
  return SURFPOISSON_VERSION_STRING;
#else
  return "0.0.0";
#endif
}

DomainSpec DomainSpec::disk(double radius, const Vec2& center) {
  if (!(radius > 0.0)) throw Error("disk radius must be positive");
  DomainSpec d;
  d.kind = DomainKind::disk;
  d.a = d.b = radius;
  d.center = center;
  return d;
}

DomainSpec DomainSpec::ellipse(double a, double b, const Vec2& center) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("ellipse semi-axes must be positive");
  DomainSpec d;
  d.kind = DomainKind::ellipse;
  d.a = a;
  d.b = b;
  d.center = center;
  return d;
}

Vec2 DomainSpec::boundary_point(double s) const {
  return center + Vec2(a * std::cos(s), b * std::sin(s));
}

Vec2 DomainSpec::boundary_normal(double s) const {
  // tangent (-a sin s, b cos s); outward normal is its -90 degree rotation
  Vec2 nrm(b * std::cos(s), a * std::sin(s));
  return nrm / nrm.norm();
}

double DomainSpec::boundary_speed(double s) const {
  return std::hypot(a * std::sin(s), b * std::cos(s));
}

Vec2 DomainSpec::project_to_boundary(const Vec2& X) const {
  const Vec2 u((X.x() - center.x()) / a, (X.y() - center.y()) / b);
  const double r = u.norm();
  if (r < 1e-300) throw Error("cannot project the domain center onto the boundary");
  return center + Vec2(a * u.x() / r, b * u.y() / r);
}

double DomainSpec::boundary_parameter(const Vec2& X) const {
  return wrap_angle(std::atan2((X.y() - center.y()) / b, (X.x() - center.x()) / a));
}

bool DomainSpec::contains(const Vec2& X, double tol) const {
  const Vec2 u((X.x() - center.x()) / a, (X.y() - center.y()) / b);
  return u.squaredNorm() <= 1.0 + tol;
}

double DomainSpec::area() const { return std::numbers::pi * a * b; }

double DomainSpec::perimeter() const {
  if (kind == DomainKind::disk || a == b) return kTwoPi * a;
  // composite Simpson on |dU'(s)|; 4096 panels is far below 1e-12 here
  const int n = 4096;
  const double hh = kTwoPi / n;
  double sum = boundary_speed(0.0) + boundary_speed(kTwoPi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * boundary_speed(i * hh);
  return sum * hh / 3.0;
}

double DomainSpec::diameter() const { return 2.0 * std::max(a, b); }

Chart make_flat_chart(const DomainSpec& domain) {
  Chart c;
  c.kind = "flat";
  c.domain = domain;
  c.position = [](const Vec2& X) { return Vec3(X.x(), X.y(), 0.0); };
  c.jacobian = [](const Vec2&, Vec3& g1, Vec3& g2) {
    g1 = Vec3(1.0, 0.0, 0.0);
    g2 = Vec3(0.0, 1.0, 0.0);
  };
  c.hessian = [](const Vec2&, Vec3& h11, Vec3& h12, Vec3& h22) {
    h11.setZero();
    h12.setZero();
    h22.setZero();
  };
  return c;
}

Chart make_monge_chart(const DomainSpec& domain, const std::vector<MongeTerm>& terms) {
  for (const auto& t : terms) {
    if (t.i < 0 || t.j < 0 || t.i + t.j > 4)
      throw Error("monge term degree out of range (need 0 <= i+j <= 4)");
  }
  auto poly = [terms](const Vec2& X, int di, int dj) {
    double sum = 0.0;
    for (const auto& t : terms) {
      if (t.i < di || t.j < dj) continue;
      double coef = t.c;
      for (int k = 0; k < di; ++k) coef *= t.i - k;
      for (int k = 0; k < dj; ++k) coef *= t.j - k;
      sum += coef * std::pow(X.x(), t.i - di) * std::pow(X.y(), t.j - dj);
    }
    return sum;
  };
  Chart c;
  c.kind = "monge";
  for (const auto& t : terms) {
    c.params.push_back(t.i);
    c.params.push_back(t.j);
    c.params.push_back(t.c);
  }
  c.domain = domain;
  c.position = [poly](const Vec2& X) { return Vec3(X.x(), X.y(), poly(X, 0, 0)); };
  c.jacobian = [poly](const Vec2& X, Vec3& g1, Vec3& g2) {
    g1 = Vec3(1.0, 0.0, poly(X, 1, 0));
    g2 = Vec3(0.0, 1.0, poly(X, 0, 1));
  };
  c.hessian = [poly](const Vec2& X, Vec3& h11, Vec3& h12, Vec3& h22) {
    h11 = Vec3(0.0, 0.0, poly(X, 2, 0));
    h12 = Vec3(0.0, 0.0, poly(X, 1, 1));
    h22 = Vec3(0.0, 0.0, poly(X, 0, 2));
  };
  return c;
}

Chart make_hemisphere_chart(const DomainSpec& domain, double radius) {
  if (!(radius > 0.0)) throw Error("hemisphere radius must be positive");
  const double reach = std::hypot(std::abs(domain.center.x()) + domain.a,
                                  std::abs(domain.center.y()) + domain.b);
  if (!(reach < radius))
    throw Error("hemisphere patch must stay strictly inside the equator circle");
  Chart c;
  c.kind = "hemisphere";
  c.params = {radius};
  c.domain = domain;
  const double R2 = radius * radius;
  c.position = [R2](const Vec2& X) {
    return Vec3(X.x(), X.y(), std::sqrt(R2 - X.squaredNorm()));
  };
  c.jacobian = [R2](const Vec2& X, Vec3& g1, Vec3& g2) {
    const double z = std::sqrt(R2 - X.squaredNorm());
    g1 = Vec3(1.0, 0.0, -X.x() / z);
    g2 = Vec3(0.0, 1.0, -X.y() / z);
  };
  c.hessian = [R2](const Vec2& X, Vec3& h11, Vec3& h12, Vec3& h22) {
    const double z = std::sqrt(R2 - X.squaredNorm());
    const double z3 = z * z * z;
    h11 = Vec3(0.0, 0.0, -1.0 / z - X.x() * X.x() / z3);
    h12 = Vec3(0.0, 0.0, -X.x() * X.y() / z3);
    h22 = Vec3(0.0, 0.0, -1.0 / z - X.y() * X.y() / z3);
  };
  return c;
}

Chart make_cylinder_chart(const DomainSpec& domain) {
  if (!(domain.diameter() < kTwoPi))
    throw Error("cylinder patch domain must have diameter below 2*pi for bijectivity");
  Chart c;
  c.kind = "cylinder";
  c.domain = domain;
  c.position = [](const Vec2& X) {
    return Vec3(std::cos(X.x()), std::sin(X.x()), X.y());
  };
  c.jacobian = [](const Vec2& X, Vec3& g1, Vec3& g2) {
    g1 = Vec3(-std::sin(X.x()), std::cos(X.x()), 0.0);
    g2 = Vec3(0.0, 0.0, 1.0);
  };
  c.hessian = [](const Vec2& X, Vec3& h11, Vec3& h12, Vec3& h22) {
    h11 = Vec3(-std::cos(X.x()), -std::sin(X.x()), 0.0);
    h12.setZero();
    h22.setZero();
  };
  return c;
}

Chart make_degenerate_chart(const DomainSpec& domain) {
  Chart c;
  c.kind = "degenerate";
  c.domain = domain;
  c.position = [](const Vec2& X) { return Vec3(X.x(), X.y() * X.y(), 0.0); };
  c.jacobian = [](const Vec2& X, Vec3& g1, Vec3& g2) {
    g1 = Vec3(1.0, 0.0, 0.0);
    g2 = Vec3(0.0, 2.0 * X.y(), 0.0);
  };
  c.hessian = [](const Vec2&, Vec3& h11, Vec3& h12, Vec3& h22) {
    h11.setZero();
    h12.setZero();
    h22 = Vec3(0.0, 2.0, 0.0);
  };
  return c;
}

namespace {

struct FirstOrder {
  Vec3 g1, g2, w, n;
  double wnorm;
};

FirstOrder first_order(const Chart& chart, const Vec2& X) {
  FirstOrder f;
  chart.jacobian(X, f.g1, f.g2);
  f.w = f.g1.cross(f.g2);
  f.wnorm = f.w.norm();
  if (f.wnorm < chart.lambda_min_floor)
    throw DegenerateMetric("|g1 x g2| below lambda_min floor at X = (" +
                           std::to_string(X.x()) + ", " + std::to_string(X.y()) + ")");
  f.n = f.w / f.wnorm;
  return f;
}

}  // namespace

MetricFrame metric_frame(const Chart& chart, const Vec2& X) {
  const FirstOrder f = first_order(chart, X);
  MetricFrame m;
  m.g1 = f.g1;
  m.g2 = f.g2;
  m.g_lower << f.g1.dot(f.g1), f.g1.dot(f.g2), f.g2.dot(f.g1), f.g2.dot(f.g2);
  m.G = m.g_lower(0, 0) * m.g_lower(1, 1) - m.g_lower(0, 1) * m.g_lower(1, 0);
  // true inverse: adjugate has g22 top-left and g11 bottom-right
  m.g_upper << m.g_lower(1, 1) / m.G, -m.g_lower(0, 1) / m.G,
      -m.g_lower(1, 0) / m.G, m.g_lower(0, 0) / m.G;
  m.sqrtG = f.wnorm;
  m.n = f.n;

  Vec3 h11, h12, h22;
  chart.hessian(X, h11, h12, h22);
  // dw/dX_b = h_{1b} x g2 + g1 x h_{2b}; dn/dX_b is its tangential part / |w|
  const Vec3 dw1 = h11.cross(f.g2) + f.g1.cross(h12);
  const Vec3 dw2 = h12.cross(f.g2) + f.g1.cross(h22);
  const Vec3 dn1 = (dw1 - f.n * f.n.dot(dw1)) / f.wnorm;
  const Vec3 dn2 = (dw2 - f.n * f.n.dot(dw2)) / f.wnorm;
  m.H = -(m.g_upper(0, 0) * f.g1.dot(dn1) + m.g_upper(0, 1) * f.g1.dot(dn2) +
          m.g_upper(1, 0) * f.g2.dot(dn1) + m.g_upper(1, 1) * f.g2.dot(dn2));
  return m;
}

double mean_curvature(const Chart& chart, const Vec2& X) {
  return metric_frame(chart, X).H;
}

Vec3 conormal_at(const Chart& chart, const Vec2& X, const Vec2& nU) {
  const FirstOrder f = first_order(chart, X);
  const Vec3 tangent = nU.x() * f.g2 - nU.y() * f.g1;
  const double tnorm = tangent.norm();
  if (tnorm < chart.lambda_min_floor)
    throw ZeroTangent("mapped boundary tangent vanished");
  return (tangent / tnorm).cross(f.n);
}

Vec3 conormal(const Chart& chart, double s) {
  return conormal_at(chart, chart.domain.boundary_point(s), chart.domain.boundary_normal(s));
}

double boundary_line_element(const Chart& chart, const Vec2& X, const Vec2& nU) {
  Vec3 g1, g2;
  chart.jacobian(X, g1, g2);
  return (nU.x() * g2 - nU.y() * g1).norm();
}

namespace {

struct SamplePoint {
  Vec2 X;
  double wnorm;    // |g1 x g2|
  double eig_min;  // smallest eigenvalue of g_upper
};

SamplePoint sample_metric(const Chart& chart, const Vec2& X) {
  Vec3 g1, g2;
  chart.jacobian(X, g1, g2);
  const Vec3 w = g1.cross(g2);
  SamplePoint p;
  p.X = X;
  p.wnorm = w.norm();
  if (p.wnorm * p.wnorm < 1e-300) {
    p.eig_min = 0.0;
    return p;
  }
  const double a11 = g1.dot(g1), a12 = g1.dot(g2), a22 = g2.dot(g2);
  const double det = a11 * a22 - a12 * a12;
  // eigenvalues of g_upper are reciprocals of those of g_lower
  const double tr = a11 + a22;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  const double lower_max = tr / 2.0 + disc;
  p.eig_min = 1.0 / lower_max;
  return p;
}

}  // namespace

ValidationReport validate_chart(const Chart& chart, int resolution) {
  const int n = std::max(resolution, 8);
  const DomainSpec& dom = chart.domain;

  std::vector<Vec2> samples;
  samples.reserve(static_cast<size_t>(n + 1) * (n + 1) + 4 * n + 1);
  samples.push_back(dom.center);
  for (int i = 0; i <= n; ++i) {
    const double x = dom.center.x() + dom.a * (2.0 * i / n - 1.0);
    for (int j = 0; j <= n; ++j) {
      const double y = dom.center.y() + dom.b * (2.0 * j / n - 1.0);
      const Vec2 X(x, y);
      if (dom.contains(X, 1e-12)) samples.push_back(X);
    }
  }
  for (int k = 0; k < 4 * n; ++k)
    samples.push_back(dom.boundary_point(kTwoPi * k / (4 * n)));

  std::vector<SamplePoint> results(samples.size());
  const int workers = std::min<int>(worker_cap(), static_cast<int>(samples.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < samples.size(); ++i) results[i] = sample_metric(chart, samples[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t i = w; i < samples.size(); i += workers)
          results[i] = sample_metric(chart, samples[i]);
      });
    }
    for (auto& t : pool) t.join();
  }

  ValidationReport report;
  report.lambda_min_est = std::numeric_limits<double>::infinity();
  report.lambda_0_est = std::numeric_limits<double>::infinity();
  for (const auto& p : results) {
    report.lambda_min_est = std::min(report.lambda_min_est, p.wnorm);
    report.lambda_0_est = std::min(report.lambda_0_est, p.eig_min);
  }

  std::vector<SamplePoint> sorted = results;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SamplePoint& l, const SamplePoint& r) { return l.wnorm < r.wnorm; });
  const size_t keep = std::min<size_t>(8, sorted.size());
  for (size_t i = 0; i < keep; ++i)
    report.worst_points.emplace_back(sorted[i].X, sorted[i].wnorm);

  report.pass = report.lambda_min_est > chart.lambda_min_floor &&
                report.lambda_0_est > chart.lambda_min_floor;
  return report;
}

}  // namespace surfpoisson
