#pragma once

#include <stdexcept>
#include <string>

namespace nnchain {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user-facing input (n < 1, non-finite fields, malformed grids, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

/// A denominator of the explicit five-root solution is too close to zero;
/// the caller should fall back to the minor-sequence recurrence.
struct NearSingularCoefficient : Error {
    using Error::Error;
};

/// |b| is numerically zero, so gamma = sqrt(a/4b) and everything built on it
/// is undefined; callers should take the b -> 0 path instead.
struct BZero : Error {
    using Error::Error;
};

/// sin(2*alpha) is numerically zero (Delta ~ 0): the Chebyshev closed form is
/// 0/0 there; callers fall back to the minor-sequence recurrence.
struct DegenerateAngle : Error {
    using Error::Error;
};

/// lambda + 2b ~ 0 in the no-NN-coupling limit formula (removable; the caller
/// may perturb lambda).
struct RemovableSingularity : Error {
    using Error::Error;
};

/// A tangent argument is within tolerance of pi/2 + m*pi.
struct PoleProximity : Error {
    using Error::Error;
};

/// A quantity that must be real came out with a non-negligible imaginary
/// part (inadmissible alpha, non-real cos 2alpha, ...).
struct NonRealValue : Error {
    using Error::Error;
};

/// Branch continuation between adjacent sweep points has two candidates too
/// close to distinguish; refine the gamma grid.
struct AmbiguousBranch : Error {
    using Error::Error;
};

/// A separation minimum cannot be classified as crossing vs avoided at the
/// supplied grid resolution.
struct GridTooCoarse : Error {
    using Error::Error;
};

/// The two exponential modes of the eigenvector ansatz coincide or overflow.
struct DegenerateModes : Error {
    using Error::Error;
};

/// An iteration failed to reach its tolerance within the iteration cap.
struct NoConvergence : Error {
    using Error::Error;
};

/// Memory guard on dense-matrix paths.
struct SizeLimit : Error {
    using Error::Error;
};

/// Internal consistency check failed (e.g. imaginary residue beyond bound).
struct NumericError : Error {
    using Error::Error;
};

} // namespace nnchain
