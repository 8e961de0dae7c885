#include "nnchain/chebyshev.hpp"

#include <cmath>
#include <limits>

namespace nnchain {

namespace {

cplx ipow_c(cplx x, int p) {
    cplx r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

double b_threshold(const ChainParams& p) {
    return 1e-12 * std::max(std::fabs(p.a), 1.0);
}

} // namespace

cplx chebyshev_u(int k, cplx z) {
    if (k < 0) throw InvalidArgument("chebyshev_u: k must be >= 0");
    if (k == 0) return 1.0;
    cplx um = 1.0, u = 2.0 * z;
    for (int j = 1; j < k; ++j) {
        cplx next = 2.0 * z * u - um;
        um = u;
        u = next;
    }
    return u;
}

AuxQuantities aux_quantities(const ChainParams& params, double E) {
    params.validate();
    if (std::fabs(params.b) < b_threshold(params))
        throw BZero("aux_quantities: |b| below threshold, gamma undefined");

    const double l = params.omega0 - E;
    const double a = params.a, b = params.b;

    AuxQuantities q;
    q.lambda = l;
    q.Delta = std::sqrt(cplx((l + 2 * b) * (l + 2 * b) - 4 * a * a));
    q.chi_plus = (cplx(l - 2 * b) + q.Delta) / 2.0;
    q.chi_minus = (cplx(l - 2 * b) - q.Delta) / 2.0;
    q.gamma = std::sqrt(cplx(a / (4 * b)));
    q.theta = std::acos(q.chi_plus / (2 * b));
    q.phi = std::acos(q.chi_minus / (2 * b));
    if (a != 0.0) {
        // Principal arccos lands alpha on one of the admissible shapes:
        // real in [0, pi/2], ix, or pi/2 + ix.
        q.alpha = std::acos(cplx((l + 2 * b) / (2 * a))) / 2.0;
    } else {
        q.alpha = cplx(0.0, std::numeric_limits<double>::infinity());
    }
    return q;
}

double closed_form_tn(const ChainParams& params, double E, int n) {
    if (n < 1) throw InvalidArgument("closed_form_tn: n must be >= 1");
    params.validate();
    if (std::fabs(params.b) < b_threshold(params))
        throw BZero("closed_form_tn: |b| below threshold");
    if (params.a == 0.0) return tn_a_zero_limit(params, E, n);

    const AuxQuantities q = aux_quantities(params, E);
    const cplx s2a = std::sin(2.0 * q.alpha);
    if (std::abs(s2a) < 1e-9)
        throw DegenerateAngle("closed_form_tn: sin 2alpha ~ 0");

    const cplx u = q.gamma * std::exp(cplx(0, 1) * q.alpha);
    const cplx v = q.gamma * std::exp(cplx(0, -1) * q.alpha);
    const cplx up = chebyshev_u(n + 1, u);
    const cplx vp = chebyshev_u(n + 1, v);
    const cplx t = cplx(0, -1) * ipow_c(cplx(params.b), n + 1) * (up * up - vp * vp) /
                   (2.0 * params.a * s2a);
    if (std::fabs(t.imag()) > 1e-8 * (1.0 + std::fabs(t.real())))
        throw NumericError("closed_form_tn: imaginary residue above bound");
    return t.real();
}

cplx fn_theta_phi(int n, cplx theta, cplx phi) {
    if (n < 0) throw InvalidArgument("fn_theta_phi: n must be >= 0");
    const cplx ct = std::cos(theta), cp = std::cos(phi);
    if (std::abs(1.0 - ct) < 1e-12 || std::abs(1.0 - cp) < 1e-12)
        throw NumericError("fn_theta_phi: 1 - cos(angle) below 1e-12");
    const double m = n + 2;
    return (1.0 - std::cos(m * theta)) / (1.0 - ct) -
           (1.0 - std::cos(m * phi)) / (1.0 - cp);
}

double tn_a_zero_limit(const ChainParams& params, double E, int n) {
    if (n < 1) throw InvalidArgument("tn_a_zero_limit: n must be >= 1");
    params.validate();
    const double b = params.b;
    if (std::fabs(b) < b_threshold(params))
        throw BZero("tn_a_zero_limit: |b| below threshold");
    const double l = params.omega0 - E;
    const double scale = std::max({1.0, std::fabs(l), std::fabs(b)});
    if (std::fabs(l + 2 * b) < 1e-12 * scale)
        throw RemovableSingularity("tn_a_zero_limit: lambda + 2b ~ 0");

    const cplx w = std::sqrt(cplx((l + 2 * b) / (4 * b)));
    const cplx uw = chebyshev_u(n + 1, w);
    const cplx u0 = chebyshev_u(n + 1, cplx(0.0));
    // Sign fixed by the recurrence (T_1 = lambda).
    const cplx t = ipow_c(cplx(b), n + 1) / (l + 2 * b) * (uw * uw - u0 * u0);
    if (std::fabs(t.imag()) > 1e-8 * (1.0 + std::fabs(t.real())))
        throw NumericError("tn_a_zero_limit: imaginary residue above bound");
    return t.real();
}

} // namespace nnchain
