#include "nnchain/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense.hpp"

namespace nnchain {

namespace {

// Rescale the rolling window whenever magnitudes leave [2^-100, 2^100]; the
// recurrence is linear homogeneous, so a shared factor is exact.
constexpr int kRescaleExp = 100;
const double kUpper = std::ldexp(1.0, kRescaleExp);
const double kLower = std::ldexp(1.0, -kRescaleExp);

double ipow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

cplx ipow(cplx x, int p) {
    cplx r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

// T_1..T_5 by direct Laplace expansion of the explicit band patterns.
void seed_minors(double l, double a, double b, double out[5]) {
    const double a2 = a * a, b2 = b * b, l2 = l * l;
    out[0] = l;
    out[1] = l2 - a2;
    out[2] = l * (l2 - 2 * a2 - b2) + 2 * a2 * b;
    out[3] = l2 * l2 - 3 * a2 * l2 - 2 * b2 * l2 + 4 * a2 * b * l + a2 * a2 - 2 * a2 * b2 + b2 * b2;
    out[4] = l2 * l2 * l - 4 * a2 * l2 * l - 3 * b2 * l2 * l + 6 * a2 * b * l2 +
             3 * a2 * a2 * l - 2 * a2 * b2 * l + 2 * b2 * b2 * l - 4 * a2 * a2 * b + 2 * a2 * b2 * b;
}

} // namespace

double ScaledValue::to_double() const { return std::ldexp(mantissa, exp2); }

double ScaledValue::log2_abs() const {
    if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log2(std::fabs(mantissa)) + exp2;
}

MinorSequence minor_sequence(const ChainParams& params, double E) {
    params.validate();
    const int n = params.n;
    const double l = params.omega0 - E;
    const double a = params.a, b = params.b;

    MinorSequence seq;
    seq.lambda = l;
    seq.scaled.resize(n);

    double seeds[5];
    seed_minors(l, a, b, seeds);

    const double c1 = l - b;
    const double c2 = l * b - a * a;
    const double c3 = a * a * b - b * b * l;
    const double c4 = b * b * b * b - b * b * b * l;
    const double c5 = b * b * b * b * b;

    // Rolling window w[0..4] = latest five values at a shared exponent.
    double w[5] = {0, 0, 0, 0, 0};
    int wexp = 0;
    for (int k = 1; k <= n; ++k) {
        double t;
        if (k <= 5) {
            t = std::ldexp(seeds[k - 1], -wexp);  // bring seed to window scale
        } else {
            t = c1 * w[4] + c2 * w[3] + c3 * w[2] + c4 * w[1] + c5 * w[0];
        }
        w[0] = w[1]; w[1] = w[2]; w[2] = w[3]; w[3] = w[4]; w[4] = t;
        seq.scaled[k - 1] = ScaledValue{t, wexp};

        double big = 0;
        for (double v : w) big = std::max(big, std::fabs(v));
        if (big > kUpper) {
            for (double& v : w) v = std::ldexp(v, -kRescaleExp);
            wexp += kRescaleExp;
        } else if (big != 0.0 && big < kLower) {
            for (double& v : w) v = std::ldexp(v, kRescaleExp);
            wexp -= kRescaleExp;
        }
    }

    seq.values.resize(n);
    for (int k = 0; k < n; ++k) seq.values[k] = seq.scaled[k].to_double();
    return seq;
}

std::vector<double> dn_sequence(const ChainParams& params, double E) {
    params.validate();
    if (params.n < 2) throw InvalidArgument("dn_sequence: requires n >= 2");
    const double l = params.omega0 - E;
    const double a = params.a, b = params.b;

    MinorSequence T = minor_sequence(params, E);
    std::vector<double> d(params.n - 1);
    d[0] = a * l - a * b;
    for (int k = 3; k <= params.n; ++k)
        d[k - 2] = a * T.values[k - 2] - b * d[k - 3];
    return d;
}

double direct_determinant(const SymmetricBandMatrix& matrix, double E) {
    const int n = matrix.n;
    std::vector<double> m = matrix.to_dense();
    for (int i = 0; i < n; ++i) m[i * n + i] -= E;
    return detail::lu_determinant(detail::lu_factor(std::move(m), n));
}

GeneralSolutionCoeffs general_solution_coeffs(const ChainParams& params, double E) {
    params.validate();
    const double l = params.omega0 - E;
    const double a = params.a, b = params.b;
    const double scale = std::max({1.0, std::fabs(l), std::fabs(a), std::fabs(b)});
    const double tol = 1e-8 * scale;

    const cplx Delta = std::sqrt(cplx((l + 2 * b) * (l + 2 * b) - 4 * a * a));
    if (std::abs(Delta) < tol)
        throw NearSingularCoefficient("general solution: Delta ~ 0");

    const cplx chi_p = (cplx(l - 2 * b) + Delta) / 2.0;
    const cplx chi_m = (cplx(l - 2 * b) - Delta) / 2.0;
    const cplx sq_p = std::sqrt(chi_p * chi_p - 4 * b * b);
    const cplx sq_m = std::sqrt(chi_m * chi_m - 4 * b * b);
    if (std::abs(sq_p) < tol || std::abs(sq_m) < tol)
        throw NearSingularCoefficient("general solution: chi^2 ~ 4 b^2");
    if (std::fabs(4 * b * l - 8 * b * b - a * a) < tol * scale)
        throw NearSingularCoefficient("general solution: 4 b lambda - 8 b^2 - a^2 ~ 0");
    if (std::fabs(b) < tol)
        throw NearSingularCoefficient("general solution: b ~ 0 collapses three roots");

    GeneralSolutionCoeffs gc;
    gc.b_root = b;
    gc.x_plus = (chi_p + sq_p) / 2.0;
    gc.x_minus = (chi_p - sq_p) / 2.0;
    gc.y_plus = (chi_m + sq_m) / 2.0;
    gc.y_minus = (chi_m - sq_m) / 2.0;

    const cplx roots[5] = {cplx(b), gc.x_plus, gc.x_minus, gc.y_plus, gc.y_minus};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (std::abs(roots[i] - roots[j]) < tol)
                throw NearSingularCoefficient("general solution: coincident roots");

    // Partial-fraction residues of (1+bz)/prod(1 - r z) at z = 1/r.
    cplx coeff[5];
    for (int i = 0; i < 5; ++i) {
        cplx den = 1.0;
        for (int j = 0; j < 5; ++j)
            if (j != i) den *= (1.0 - roots[j] / roots[i]);
        coeff[i] = (1.0 + b / roots[i]) / den;
    }
    gc.G = coeff[0];
    gc.P_plus = coeff[1];
    gc.P_minus = coeff[2];
    gc.Q_plus = coeff[3];
    gc.Q_minus = coeff[4];
    return gc;
}

double general_solution_tn(const ChainParams& params, double E, int n) {
    if (n < 1) throw InvalidArgument("general_solution_tn: n must be >= 1");
    const GeneralSolutionCoeffs gc = general_solution_coeffs(params, E);
    const cplx t = gc.G * ipow(cplx(gc.b_root), n) +
                   gc.P_plus * ipow(gc.x_plus, n) + gc.P_minus * ipow(gc.x_minus, n) +
                   gc.Q_plus * ipow(gc.y_plus, n) + gc.Q_minus * ipow(gc.y_minus, n);
    if (std::fabs(t.imag()) > 1e-8 * (1.0 + std::fabs(t.real())))
        throw NumericError("general_solution_tn: imaginary residue above bound");
    return t.real();
}

} // namespace nnchain
