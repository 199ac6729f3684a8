#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "surfpoisson/common.hpp"
#include "surfpoisson/errors.hpp"

namespace surfpoisson {

enum class DomainKind { disk, ellipse };

/// Planar parameter domain U: a disk or an axis-aligned ellipse.
/// The boundary parametrization is s -> center + (a cos s, b sin s), s in [0, 2pi).
struct DomainSpec {
  DomainKind kind = DomainKind::disk;
  double a = 1.0;  // semi-axis along X1 (disk: radius)
  double b = 1.0;  // semi-axis along X2 (disk: radius)
  Vec2 center = Vec2::Zero();

  static DomainSpec disk(double radius, const Vec2& center = Vec2::Zero());
  static DomainSpec ellipse(double a, double b, const Vec2& center = Vec2::Zero());

  Vec2 boundary_point(double s) const;
  /// Outward unit normal of dU at parameter s.
  Vec2 boundary_normal(double s) const;
  /// |d/ds boundary_point(s)|.
  double boundary_speed(double s) const;
  /// Radial projection onto dU in axis-normalized coordinates; exact for disks,
  /// lands on the ellipse for ellipses. X must not coincide with the center.
  Vec2 project_to_boundary(const Vec2& X) const;
  /// Parameter s in [0, 2pi) of the radial projection of X.
  double boundary_parameter(const Vec2& X) const;
  bool contains(const Vec2& X, double tol = 1e-12) const;
  double area() const;
  /// Arc length of dU; analytic for disks, numerically integrated for ellipses.
  double perimeter() const;
  double diameter() const;
};

/// Pointwise metric data of the chart at one parameter point.
struct MetricFrame {
  Vec3 g1, g2;    // tangent basis d xhat / d X_alpha
  Mat2 g_lower;   // g_{alpha beta}
  Mat2 g_upper;   // g^{alpha beta} = (g_lower)^{-1}
  double G;       // det g_lower = |g1 x g2|^2
  double sqrtG;   // area element
  Vec3 n;         // unit normal (g1 x g2)/|g1 x g2|
  double H;       // mean curvature -div_Gamma n under this orientation
};

/// Parametrization of the surface patch over a DomainSpec. Evaluators are
/// analytic per catalog entry; hessian returns (d2x/dX1dX1, d2x/dX1dX2,
/// d2x/dX2dX2). Immutable after construction.
struct Chart {
  std::string kind;
  std::vector<double> params;
  DomainSpec domain;
  double lambda_min_floor = 1e-8;
  std::function<Vec3(const Vec2&)> position;
  std::function<void(const Vec2&, Vec3&, Vec3&)> jacobian;
  std::function<void(const Vec2&, Vec3&, Vec3&, Vec3&)> hessian;
};

/// One monomial c * X1^i * X2^j of a Monge patch height function.
struct MongeTerm {
  int i = 0;
  int j = 0;
  double c = 0.0;
};

Chart make_flat_chart(const DomainSpec& domain);
/// Graph z = sum c_ij X1^i X2^j; total degree of every term must be <= 4.
Chart make_monge_chart(const DomainSpec& domain, const std::vector<MongeTerm>& terms);
/// Graph z = sqrt(R^2 - |X|^2); requires the closure of the domain to stay
/// strictly inside the equator circle of radius R.
Chart make_hemisphere_chart(const DomainSpec& domain, double radius);
/// Isometric patch (cos X1, sin X1, X2); domain diameter must stay below 2pi.
Chart make_cylinder_chart(const DomainSpec& domain);
/// Fold (X1, X2^2, 0): g2 vanishes along X2 = 0. Exists so that validation
/// failure paths stay testable.
Chart make_degenerate_chart(const DomainSpec& domain);

MetricFrame metric_frame(const Chart& chart, const Vec2& X);
double mean_curvature(const Chart& chart, const Vec2& X);

/// Unit outer co-normal at boundary parameter s, using the analytic dU normal.
Vec3 conormal(const Chart& chart, double s);
/// Same formula at an explicit point with an explicit outward normal of dU
/// (used with the discrete, edge-perpendicular normals of a mesh boundary).
Vec3 conormal_at(const Chart& chart, const Vec2& X, const Vec2& nU);
/// Boundary line element |nU_1 g2 - nU_2 g1| converting dH^1 on dU to dH^1
/// on the surface boundary.
double boundary_line_element(const Chart& chart, const Vec2& X, const Vec2& nU);

struct ValidationReport {
  double lambda_min_est = 0.0;  // min over samples of |g1 x g2|
  double lambda_0_est = 0.0;    // min over samples of smallest eigenvalue of g_upper
  bool pass = false;
  /// Lowest |g1 x g2| sample sites, ascending.
  std::vector<std::pair<Vec2, double>> worst_points;
};

/// Samples metric quantities on a dense grid over the closure of U (interior
/// tensor grid plus boundary ring plus center). resolution >= 8.
ValidationReport validate_chart(const Chart& chart, int resolution = 64);

}  // namespace surfpoisson
