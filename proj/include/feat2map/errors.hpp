#pragma once

#include <stdexcept>
#include <string>

namespace feat2map {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct ZeroLengthCurve : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct DegenerateTangent : Error { using Error::Error; };
struct DuplicateSocketAngle : Error { using Error::Error; };
struct NonFiniteNumber : Error { using Error::Error; };

// map model / lookup
struct UnknownJunction : Error { using Error::Error; };
struct UnresolvedReference : Error { using Error::Error; };
struct MalformedInput : Error { using Error::Error; };

// feature extraction
struct DegenerateJunction : Error { using Error::Error; };
struct GapSumMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct NoJunctions : Error { using Error::Error; };

// synthesis
struct UnsatisfiableRotation : Error { using Error::Error; };
struct NoFeasiblePoint : Error { using Error::Error; };
struct SocketConflict : Error { using Error::Error; };
struct ChainDiscontinuity : Error { using Error::Error; };

// coverage
struct UnsupportedLightState : Error { using Error::Error; };

}  // namespace feat2map
