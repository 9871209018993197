#pragma once

#include <stdexcept>
#include <string>

namespace laglens {

/// Base class for every failure the library reports.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- integrator -----------------------------------------------------------

/// A sample left the finite range (|y| above the blow-up limit, or NaN/inf).
struct NonFiniteState : Error { using Error::Error; };

/// Requested horizon is shorter than one step.
struct HorizonTooShort : Error { using Error::Error; };

/// Dense evaluation outside the stored span.
struct OutOfRange : Error { using Error::Error; };

// --- spectrum --------------------------------------------------------------

/// Newton converged to a root outside the requested branch strip.
struct BranchEscape : Error { using Error::Error; };

/// Newton failed to converge within the iteration budget.
struct NoConvergence : Error { using Error::Error; };

/// Operation evaluated at a point outside its mathematical domain.
struct DomainError : Error { using Error::Error; };

// --- diffusion ---------------------------------------------------------------

/// Backward heat flow requested; refused as ill-posed.
struct NegativeTime : Error { using Error::Error; };

/// Kernel requested at zero (or negative) spread; the delta limit is the
/// caller's responsibility.
struct DegenerateTime : Error { using Error::Error; };

// --- mapper ------------------------------------------------------------------

/// No local maximum found above the detection threshold.
struct NoPeaks : Error { using Error::Error; };

/// Requested row is beyond the reshaped trajectory.
struct RowOutOfRange : Error { using Error::Error; };

/// Initial profile too wide for the localized-pulse analysis.
struct NotLocalized : Error { using Error::Error; };

/// Envelope anchor with non-positive amplitude.
struct DegenerateAnchor : Error { using Error::Error; };

}  // namespace laglens
