#pragma once

#include <stdexcept>

namespace blowup {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct InvalidParameters : Error { using Error::Error; };

// forcing
struct NonPositiveTime : Error { using Error::Error; };
struct OutsideSampleRange : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct InsufficientGrid : Error { using Error::Error; };

// exponents
struct SigmaNotLocallyIntegrable : Error { using Error::Error; };
struct MissingClassification : Error { using Error::Error; };

// cutoffs
struct ThetaExceedsFamilyCapacity : Error { using Error::Error; };

// solver
struct InvalidGrid : Error { using Error::Error; };
struct StabilityViolation : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };

// verification
struct RExceedsDomain : Error { using Error::Error; };
struct AnnulusIntegralDiverges : Error { using Error::Error; };
struct IntegrabilityViolated : Error { using Error::Error; };
struct HorizonExceeded : Error { using Error::Error; };

// cli
struct UnknownKind : Error { using Error::Error; };

}  // namespace blowup
