#pragma once

#include <stdexcept>
#include <string>

namespace piconelab {

/// Base class of all library errors; the CLI maps subclasses to exit-code classes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation left a subexpression's domain (divide by zero, log of a
/// non-positive value, real power of a non-positive base). The message names
/// the offending subterm.
struct DomainError : Error {
    using Error::Error;
};

/// Point dimension does not match the expression's declared dimension.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A factor of the identity is singular at this point, e.g. |Dv|^(p-2) with
/// p < 2 at Dv = 0, or u^(p-2) with p < 2 at u = 0.
struct SingularEvaluation : Error {
    using Error::Error;
};

struct NegativeInput : Error {
    using Error::Error;
};

struct UnknownCatalogEntry : Error {
    using Error::Error;
};

struct ZeroDenominator : Error {
    using Error::Error;
};

struct IterationFailure : Error {
    using Error::Error;
};

/// One or more hypothesis samples violated u >= 0, v > 0 or -lap v > 0.
struct AdmissibilityViolation : Error {
    using Error::Error;
};

/// A theorem hypothesis gate failed (weight ordering, sign conditions, ...).
struct HypothesisViolation : Error {
    using Error::Error;
};

/// A provided exact-solution instance does not satisfy its system residually.
struct ResidualTooLarge : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace piconelab
