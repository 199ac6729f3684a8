#pragma once

#include <stdexcept>
#include <string>

namespace surfpoisson {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |g1 x g2| fell below the chart's lambda_min floor.
struct DegenerateMetric : Error {
  using Error::Error;
};

/// The mapped boundary tangent n1*g2 - n2*g1 vanished.
struct ZeroTangent : Error {
  using Error::Error;
};

/// Mesh generation could not meet the quality targets.
struct MeshFailure : Error {
  using Error::Error;
};

/// Quadrature order outside {1,2,3,4}.
struct UnsupportedOrder : Error {
  using Error::Error;
};

/// Strict mode rejected a load with compatibility defect above threshold.
struct IncompatibleLoad : Error {
  using Error::Error;
};

/// Dirichlet interior solve failed; signals an assembly error.
struct SingularInteriorBlock : Error {
  using Error::Error;
};

/// Inverse-power iteration did not reach tolerance.
struct EigenNoConvergence : Error {
  using Error::Error;
};

/// Malformed or unknown configuration input.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace surfpoisson
