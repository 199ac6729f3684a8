#include <cmath>

#include "surfpoisson/errors.hpp"
#include "surfpoisson/mesh.hpp"

namespace surfpoisson {

QuadratureRule quadrature(int order) {
  QuadratureRule rule;
  rule.order = order;
  switch (order) {
    case 1:
      rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      rule.weights = {1.0};
      break;
    case 2:
      rule.points = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
                     {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
                     {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}};
      rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      break;
    case 3: {
      // equal-weight 6-point rule: abscissae are the roots of
      // 60 t^3 - 60 t^2 + 15 t - 1 (elementary symmetric moments
      // s1 = 1, s2 = 1/4, s3 = 1/60), exact through degree 3
      const double r0 = 0.10903900907287721;
      const double r1 = 0.23193336855303057;
      const double r2 = 0.65902762237409222;
      rule.points = {{r0, r1, r2}, {r0, r2, r1}, {r1, r0, r2},
                     {r1, r2, r0}, {r2, r0, r1}, {r2, r1, r0}};
      rule.weights.assign(6, 1.0 / 6.0);
      break;
    }
    case 4: {
      // two-orbit 6-point rule, exact through degree 4
      const double a1 = 0.8168475729804585, b1 = 0.0915762135097707;
      const double w1 = 0.1099517436553219;
      const double a2 = 0.1081030181680702, b2 = 0.4459484909159649;
      const double w2 = 0.2233815896780115;
      rule.points = {{a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1},
                     {a2, b2, b2}, {b2, a2, b2}, {b2, b2, a2}};
      rule.weights = {w1, w1, w1, w2, w2, w2};
      break;
    }
    default:
      throw UnsupportedOrder("quadrature order must be in {1,2,3,4}, got " +
                             std::to_string(order));
  }
  return rule;
}

EdgeQuadrature edge_quadrature() {
  // 3-point Gauss-Legendre mapped to [0,1]
  const double offset = std::sqrt(0.6) / 2.0;
  EdgeQuadrature q;
  q.t = {0.5 - offset, 0.5, 0.5 + offset};
  q.w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  return q;
}

}  // namespace surfpoisson
