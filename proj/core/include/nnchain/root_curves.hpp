#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "nnchain/chain.hpp"

namespace nnchain {

using cplx = std::complex<double>;

enum class AlphaClass { real, pure_imaginary, pi_half_plus_imaginary };

const char* to_string(AlphaClass c);

/// Classifies alpha into one of the three admissible shapes (tolerance 1e-8
/// on the off-axis part). Throws NonRealValue if it fits none of them.
AlphaClass classify_alpha(cplx alpha);

/// One solution branch x(gamma) of a sweep at fixed b = 1, a = 4 gamma^2.
/// Branches are indexed bottom-up in x at each grid point.
struct RootCurve {
    int branch_index = 0;
    std::vector<double> gamma_grid;
    std::vector<double> x_values;
    std::vector<cplx> alpha_values;
    std::vector<AlphaClass> alpha_class;
};

enum class SeriesBranch { minus, plus };

/// Truncated expansion x(gamma) = x0 + c2 g^2 + c4 g^4 + c6 g^6 about
/// x0 = pi/2 + 2k pi/(n+2). coefficients = {x0, c2, c4, c6} (odd orders
/// vanish identically).
struct SeriesExpansion {
    double x0 = 0;
    std::array<double, 4> coefficients{};
    SeriesBranch branch = SeriesBranch::minus;
};

/// x = (arccos(g e^{i alpha}) + arccos(g e^{-i alpha}))/2 and
/// y = (arccos(g e^{i alpha}) - arccos(g e^{-i alpha}))/2, principal branches.
/// For an admissible alpha x is real; throws NonRealValue if |Im x| > 1e-10.
struct AngleSplit {
    double x = 0;
    cplx y;
};
AngleSplit x_y_from_alpha(double gamma, cplx alpha);

/// y(x) on the principal branch: cos 2y = 2 gamma^2 - cos 2x.
cplx y_of_x(double gamma, double x);

/// Residual of the two tangent equations at (gamma, x) with y = y_of_x:
///   minus: tan y tan((n+2)x) - tan x tan((n+2)y)
///   plus : tan x tan((n+2)x) - tan y tan((n+2)y)
/// n must be even. Where y is real the residual is real and its real part is
/// returned; where y turns imaginary the residual is i times a real function
/// and that live component is returned instead. Throws PoleProximity when
/// any tangent argument is within 1e-9 of pi/2 + m pi.
double tangent_residual(int n, double gamma, double x, SeriesBranch branch);

namespace detail {
/// Residual continued to complex x and complex s = gamma^2 (no pole guard);
/// used for complex-step derivative extraction in tests.
cplx tangent_residual_c(int n, cplx s, cplx x, SeriesBranch branch);
}

/// Coefficients of the printed small-gamma expansions about
/// x0 = pi/2 + 2k pi/(n+2), 1 <= k <= n/2, n even:
///   minus: c2 = -sin x0/(2 cos x0), c4 = -(2c^2-1)/(8 s c^3), c6 = [...]
///   plus : c2 = -cos x0/(2 sin x0), c4 = -(2c^2-1)/(8 c s^3), c6 = [...]
/// When sin x0 = 0 the minus-branch root curve is identically x0 and all
/// higher coefficients are returned as zero; the plus-branch coefficients are
/// genuinely singular there and are returned as evaluated (the caller judges
/// validity).
SeriesExpansion series_coefficients(int n, int k, SeriesBranch branch);

/// Evaluates the truncated series at gamma.
double series_x(int n, int k, double gamma, SeriesBranch branch);

/// Bisection root of tangent_residual in [center-radius, center+radius],
/// rejecting pole crossings (brackets where |residual| does not shrink).
/// Returns nullopt when no sign-change root is found.
std::optional<double> tangent_root_near(int n, double gamma, SeriesBranch branch,
                                        double center, double radius);

/// Energy of a tangent-equation root: cos(x+y)cos(x-y) = gamma^2 and
/// lambda + 2b = 4b [cos^2(x+y) + cos^2(x-y)] give, with b = 1, omega0 = 0,
///   E = -2 - 4 cos 2x (2 gamma^2 - cos 2x).
double energy_from_x(double gamma, double x);

/// Roots on the trivial loci of the tangent algebra (the x = y and
/// x + y = pi lines at cos 2x = gamma^2, and the y = 0 line at
/// cos 2x = 2 gamma^2 - 1) zero the equations identically and carry no
/// spectral content.
bool is_spurious_tangent_root(double gamma, double x, double tol = 1e-6);

/// lambda = 2a cos(2 alpha) - 2b. Throws NonRealValue when cos 2alpha has an
/// imaginary part above 1e-10 * max(1, |Re|).
double lambda_from_alpha(const ChainParams& params, cplx alpha);

/// Solves the spectrum at each gamma (b = 1, a = 4 gamma^2, omega0 = 0,
/// bisection at 1e-12), maps every eigenvalue to alpha and to x, and joins
/// branches by nearest-x continuation between adjacent grid points. Throws
/// AmbiguousBranch when two continuation candidates are separated by less
/// than 1e-6 (refine the grid), InvalidArgument for a non-ascending or
/// negative grid.
std::vector<RootCurve> sweep_curves(int n, const std::vector<double>& gamma_grid);

/// Crossing counts per adjacent curve pair (pair p = branches 2p, 2p+1),
/// bottom pair first, including the gamma = 0 degeneracy. Interior
/// coincidences are confirmed by re-solving on a refined bracket until the
/// pair separation drops below 1e-7. Throws GridTooCoarse when a separation
/// minimum cannot be classified.
std::vector<int> degeneracy_crossings(const std::vector<RootCurve>& curves);

} // namespace nnchain
