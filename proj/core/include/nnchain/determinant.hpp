#pragma once

#include <complex>
#include <vector>

#include "nnchain/chain.hpp"

namespace nnchain {

using cplx = std::complex<double>;

/// One leading principal minor in guarded form: value = mantissa * 2^exp2.
/// Only signs and ratios of consecutive minors matter for eigenvalue
/// counting, so the sequence is rescaled whenever magnitudes pass 2^100.
struct ScaledValue {
    double mantissa = 0;
    int exp2 = 0;

    double to_double() const;
    double log2_abs() const;  ///< -inf for zero
};

/// Leading principal minors T_1..T_n of H - E*I at lambda = omega0 - E.
/// `values` holds plain doubles (+-inf if a minor overflows the double
/// range); `scaled` always holds the exact guarded representation.
struct MinorSequence {
    double lambda = 0;
    std::vector<double> values;
    std::vector<ScaledValue> scaled;

    double tn() const { return values.back(); }
};

/// T_1..T_5 seeded by direct expansion of the explicit 1x1..5x5 determinants,
/// then the five-term recurrence
///   T_k = (l-b) T_{k-1} + (lb-a^2) T_{k-2} + (a^2 b - b^2 l) T_{k-3}
///         + (b^4 - b^3 l) T_{k-4} + b^5 T_{k-5}
/// for k >= 6. With b = 0 every extra coefficient carries a factor of b, so
/// the relation degenerates exactly to the tridiagonal T_k = l T_{k-1} - a^2 T_{k-2}.
MinorSequence minor_sequence(const ChainParams& params, double E);

/// D_2..D_n of the bordered determinant pattern, seeded with
/// D_2 = a*lambda - a*b and advanced through D_k = a T_{k-1} - b D_{k-1}.
/// Requires n >= 2. Element [k-2] holds D_k.
std::vector<double> dn_sequence(const ChainParams& params, double E);

/// det(H - E*I) by dense Gaussian elimination with partial pivoting.
/// Independent of the recurrence route; the two are mutual oracles.
double direct_determinant(const SymmetricBandMatrix& matrix, double E);

/// The five roots of the recurrence's characteristic quintic and the
/// constants of the explicit solution T_n = G b^n + P+ x+^n + P- x-^n
/// + Q+ y+^n + Q- y-^n. Constants are the partial-fraction residues of the
/// generating function (1+bz) / [(1-bz)(1-x+z)(1-x-z)(1-y+z)(1-y-z)].
struct GeneralSolutionCoeffs {
    cplx G, P_plus, P_minus, Q_plus, Q_minus;
    cplx x_plus, x_minus, y_plus, y_minus;
    double b_root = 0;
};

/// Throws NearSingularCoefficient when Delta, sqrt(chi+-^2 - 4b^2), the
/// G-denominator 4bl - 8b^2 - a^2, or any root separation is below
/// 1e-8 * scale; callers fall back to minor_sequence.
GeneralSolutionCoeffs general_solution_coeffs(const ChainParams& params, double E);

/// Evaluates the explicit solution at order n (n need not equal params.n).
/// The imaginary residue must stay below 1e-8 * (1 + |result|).
double general_solution_tn(const ChainParams& params, double E, int n);

} // namespace nnchain
