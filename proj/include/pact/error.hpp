#pragma once

#include <stdexcept>
#include <string>

namespace pact {

/// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text could not be read as a rational number or a JSON document field.
struct ParseError : Error { using Error::Error; };

/// Instance data fails validation: probabilities not summing to one,
/// negative entries, shape mismatches, unsortable outcomes.
struct MalformedInstance : Error { using Error::Error; };

/// Payment vector fails validation (wrong length or negative entry).
struct MalformedContract : Error { using Error::Error; };

/// Two sequences that must align (e.g. distributions under comparison)
/// have different lengths.
struct DimensionMismatch : Error { using Error::Error; };

/// An operation that needs specific structural flags (no dominated actions,
/// unique welfare maximizer, a zero-cost action) was called without them.
struct AssumptionViolated : Error { using Error::Error; };

/// A precondition stated on the operation does not hold for this input.
struct PreconditionFailed : Error { using Error::Error; };

/// sparsify_to_basic was handed a contract whose expected payment exceeds
/// the minimum for the target action.
struct NotOptimalInput : Error { using Error::Error; };

/// Data does not form a valid ambiguous instance (see check_ambiguous).
struct NotAmbiguous : Error { using Error::Error; };

/// An exhaustive search would exceed its configured combination budget.
struct SizeLimitExceeded : Error { using Error::Error; };

/// Generator parameters out of range (n too small, eps outside (0,1), ...).
struct BadParams : Error { using Error::Error; };

/// Unknown name passed to a lookup-style generator.
struct UnknownName : Error { using Error::Error; };

/// No action of the instance can be implemented by any limited-liability
/// contract of the requested class.
struct NoImplementableAction : Error { using Error::Error; };

/// A specific action required to be implementable is not; a blocking
/// mixture certificate is available through min_payment.
struct NotImplementable : Error { using Error::Error; };

/// An internal invariant failed (exact arithmetic should make these
/// unreachable); reported instead of returning an unverified result.
struct InternalError : Error { using Error::Error; };

} // namespace pact
