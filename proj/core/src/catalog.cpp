#include "surfpoisson/catalog.hpp"

#include <cmath>
#include <numbers>

#include "surfpoisson/errors.hpp"

namespace surfpoisson {

namespace {
constexpr double kPi = std::numbers::pi;
}

ScalarOnU catalog_scalar(const std::string& id) {
  if (id == "zero") return [](const Vec2&) { return 0.0; };
  if (id == "one") return [](const Vec2&) { return 1.0; };
  if (id == "x1") return [](const Vec2& X) { return X.x(); };
  if (id == "x2") return [](const Vec2& X) { return X.y(); };
  if (id == "r2") return [](const Vec2& X) { return X.squaredNorm(); };
  if (id == "cos_pi_r2")
    return [](const Vec2& X) { return std::cos(kPi * X.squaredNorm()); };
  if (id == "cos_pi_r2_forcing")
    return [](const Vec2& X) {
      const double r2 = X.squaredNorm();
      return 4.0 * kPi * std::sin(kPi * r2) + 4.0 * kPi * kPi * r2 * std::cos(kPi * r2);
    };
  throw ConfigError("unknown scalar id '" + id + "'");
}

std::vector<std::string> catalog_scalar_ids() {
  return {"zero", "one", "x1", "x2", "r2", "cos_pi_r2", "cos_pi_r2_forcing"};
}

ManufacturedSolution catalog_manufactured(const std::string& id) {
  if (id == "disk_cos_pi_r2") {
    ManufacturedSolution m;
    m.v.value = catalog_scalar("cos_pi_r2");
    m.v.grad = [](const Vec2& X) {
      return Vec2(-2.0 * kPi * std::sin(kPi * X.squaredNorm()) * X);
    };
    m.F = catalog_scalar("cos_pi_r2_forcing");
    return m;
  }
  throw ConfigError("unknown manufactured id '" + id + "'");
}

std::vector<std::string> catalog_manufactured_ids() { return {"disk_cos_pi_r2"}; }

}  // namespace surfpoisson
