#pragma once

#include <complex>

#include "nnchain/chain.hpp"

namespace nnchain {

using cplx = std::complex<double>;

/// U_k(z), Chebyshev polynomial of the second kind, by the three-term
/// recurrence U_{j+1} = 2z U_j - U_{j-1}, U_0 = 1, U_1 = 2z. The recurrence
/// is used instead of sin((k+1)theta)/sin(theta) because arccos of complex
/// arguments has branch cuts the recurrence never sees.
cplx chebyshev_u(int k, cplx z);

/// Everything the closed form needs at one (params, E) point:
///   lambda  = omega0 - E
///   Delta   = sqrt((lambda+2b)^2 - 4a^2)           (principal branch)
///   chi+-   = (lambda - 2b +- Delta)/2
///   gamma   = sqrt(a/(4b))                          (principal branch)
///   alpha   : 2a cos(2 alpha) = lambda + 2b, realised as one of the three
///             admissible shapes x, ix, pi/2 + ix with x real
///   theta   = arccos(chi+ / 2b),  phi = arccos(chi- / 2b)
/// For a = 0 alpha diverges; it is reported as (0, +inf) and gamma as 0.
struct AuxQuantities {
    double lambda = 0;
    cplx Delta;
    cplx chi_plus, chi_minus;
    cplx gamma;
    cplx alpha;
    cplx theta, phi;
};

/// Throws BZero when |b| < 1e-12 * max(|a|, 1).
AuxQuantities aux_quantities(const ChainParams& params, double E);

/// The compact characteristic polynomial
///   T_n = -i b^{n+1} / (2a sin 2alpha) * { U_{n+1}(gamma e^{i alpha})^2
///                                        - U_{n+1}(gamma e^{-i alpha})^2 }.
/// The value is independent of the branch chosen for alpha and gamma (the
/// expression is invariant under alpha -> -alpha and gamma -> -gamma), so the
/// principal branches are used throughout. a = 0 routes to tn_a_zero_limit.
/// Throws DegenerateAngle when |sin 2alpha| < 1e-9, BZero as above.
double closed_form_tn(const ChainParams& params, double E, int n);

/// F_n(theta, phi) = (1-cos((n+2)theta))/(1-cos theta)
///                 - (1-cos((n+2)phi))/(1-cos phi).
/// Equals U_{n+1}(cos theta/2)^2 - U_{n+1}(cos phi/2)^2 by the half-angle
/// identity. Throws NumericError when |1 - cos theta| or |1 - cos phi| < 1e-12.
cplx fn_theta_phi(int n, cplx theta, cplx phi);

/// T_n in the a -> 0 limit:
///   T_n = b^{n+1}/(lambda+2b) * { U_{n+1}(sqrt((lambda+2b)/4b))^2 - U_{n+1}(0)^2 }.
/// The overall sign follows the recurrence (the 1x1 minor is lambda itself),
/// which fixes the square-root branch pairing. Complex square root permitted
/// when (lambda+2b)/4b < 0. Throws RemovableSingularity when |lambda+2b| is
/// numerically zero and BZero when b is.
double tn_a_zero_limit(const ChainParams& params, double E, int n);

} // namespace nnchain
