#pragma once
// errors.hpp - Exception types shared across the library.

#include <stdexcept>
#include <string>

namespace gpr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A negative shift would discard nonzero bits; some packing invariant was
// violated upstream.
struct InexactShift : Error {
    using Error::Error;
};

// A rounding argument landed exactly on a half-integer. Cannot happen for
// inputs inside the slack bounds, so this always indicates a broken contract.
struct TieDetected : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct DuplicateDegree : Error {
    using Error::Error;
};

struct DegreeOutOfRange : Error {
    using Error::Error;
};

struct UnsupportedSupport : Error {
    using Error::Error;
};

struct OddDimension : Error {
    using Error::Error;
};

struct EntryBoundViolation : Error {
    using Error::Error;
};

struct ContractViolation : Error {
    using Error::Error;
};

struct DepthTooDeep : Error {
    using Error::Error;
};

struct PrecisionInsufficient : Error {
    using Error::Error;
};

struct GuardViolated : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct UnknownTerminal : Error {
    using Error::Error;
};

struct AsymmetricInput : Error {
    using Error::Error;
};

struct BadArgument : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace gpr
