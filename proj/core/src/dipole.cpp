#include "nnchain/dipole.hpp"

#include <cmath>
#include <numbers>

namespace nnchain {

void DipoleConfig::validate() const {
    if (!(separation_over_wavelength > 0) || !std::isfinite(separation_over_wavelength))
        throw InvalidArgument("DipoleConfig: d/lambda0 must be positive and finite");
    if (!(cos_mu_r >= -1 && cos_mu_r <= 1))
        throw InvalidArgument("DipoleConfig: cos_mu_r must lie in [-1, 1]");
    if (!(gamma_decay > 0) || !std::isfinite(gamma_decay))
        throw InvalidArgument("DipoleConfig: gamma_decay must be positive and finite");
}

double omega_ij(double x_ij, double cos_mu_r, double gamma_decay) {
    if (!(x_ij > 0)) throw InvalidArgument("omega_ij: x must be > 0 (singular at contact)");
    const double c2 = cos_mu_r * cos_mu_r;
    const double cx = std::cos(x_ij), sx = std::sin(x_ij);
    return 0.75 * gamma_decay *
           (-(1 - c2) * cx / x_ij + (1 - 3 * c2) * (sx / (x_ij * x_ij) + cx / (x_ij * x_ij * x_ij)));
}

std::pair<double, double> chain_couplings(const DipoleConfig& config) {
    config.validate();
    const double x = 2 * std::numbers::pi * config.separation_over_wavelength;
    return {omega_ij(x, config.cos_mu_r, config.gamma_decay),
            omega_ij(2 * x, config.cos_mu_r, config.gamma_decay)};
}

std::vector<double> critical_separations(double cos_mu_r, double x_lo, double x_hi) {
    if (!(x_lo > 0) || !(x_hi > x_lo))
        throw InvalidArgument("critical_separations: need 0 < x_lo < x_hi");

    std::vector<double> zeros;
    const double step = 0.01;
    double x_prev = x_lo;
    double f_prev = omega_ij(x_prev, cos_mu_r, 1.0);
    for (double x = x_lo + step; x_prev < x_hi; x += step) {
        if (x > x_hi) x = x_hi;
        const double f = omega_ij(x, cos_mu_r, 1.0);
        if (f_prev == 0.0) {
            zeros.push_back(x_prev);
        } else if (f_prev * f < 0) {
            double lo = x_prev, hi = x, flo = f_prev;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                const double fm = omega_ij(mid, cos_mu_r, 1.0);
                if (fm == 0.0) { lo = hi = mid; break; }
                if ((flo < 0) != (fm < 0)) hi = mid;
                else { lo = mid; flo = fm; }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        if (x >= x_hi) break;
        x_prev = x;
        f_prev = f;
    }
    return zeros;
}

} // namespace nnchain
