#pragma once

#include <string>
#include <vector>

#include "surfpoisson/verify.hpp"

namespace surfpoisson {

/// Named analytic scalar functions on U selectable from configs (no runtime
/// expression language). Ids: zero, one, x1, x2, r2, cos_pi_r2,
/// cos_pi_r2_forcing. Throws ConfigError for unknown ids.
ScalarOnU catalog_scalar(const std::string& id);
std::vector<std::string> catalog_scalar_ids();

/// Manufactured problems. Ids: disk_cos_pi_r2 (v = cos(pi r^2) on the unit
/// disk, mean-zero with zero co-normal derivative; F = 4pi sin(pi r^2) +
/// 4pi^2 r^2 cos(pi r^2)).
ManufacturedSolution catalog_manufactured(const std::string& id);
std::vector<std::string> catalog_manufactured_ids();

}  // namespace surfpoisson
