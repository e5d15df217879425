#pragma once

#include <stdexcept>
#include <string>

namespace em {

/// Base class for all validation and numerical errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evidence construction
struct EmptyFocalSet : Error { using Error::Error; };
struct MassSumViolation : Error { using Error::Error; };
struct DuplicateFocalSet : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };

// Dynamics
struct DimensionMismatch : Error { using Error::Error; };
struct NonFiniteEntry : Error { using Error::Error; };
struct InvalidRate : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct ZeroBlockMass : Error { using Error::Error; };
struct ZeroDenominator : Error { using Error::Error; };

// Calibration
struct NoConvergence : Error { using Error::Error; };

// Ingestion
struct ParseError : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

}  // namespace em
