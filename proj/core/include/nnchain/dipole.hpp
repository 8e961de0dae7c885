#pragma once

#include <utility>
#include <vector>

#include "nnchain/errors.hpp"

namespace nnchain {

/// Geometry of the dipole-dipole coupled chain. Only the dimensionless
/// separation x = 2 pi d / lambda0 and the orientation cosine enter the
/// coupling; gamma_decay sets the overall unit.
struct DipoleConfig {
    double separation_over_wavelength = 0.1;  ///< d / lambda0, > 0
    double cos_mu_r = 0;                      ///< mu_hat . r_hat, in [-1, 1]
    double gamma_decay = 1;                   ///< Gamma, > 0

    void validate() const;
};

/// Omega(x) = (3/4) Gamma { -[1 - c^2] cos x / x
///                          + [1 - 3 c^2] (sin x / x^2 + cos x / x^3) },
/// c = cos_mu_r. Rejects x <= 0.
double omega_ij(double x_ij, double cos_mu_r, double gamma_decay);

/// (a, b) = (Omega at x, Omega at 2x) with x = 2 pi d / lambda0.
std::pair<double, double> chain_couplings(const DipoleConfig& config);

/// All zeros of Omega(x) in [x_lo, x_hi]: sign-change scan at step 0.01
/// (Omega oscillates on the scale pi) polished by bisection to 1e-10.
std::vector<double> critical_separations(double cos_mu_r, double x_lo, double x_hi);

} // namespace nnchain
