#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nnchain/chain.hpp"

namespace nnchain {

using cplx = std::complex<double>;

/// One eigenpair of the one-excitation block. c is unit-norm; residual is
/// ||H c - E c||_2 with the refined E stored here.
struct EigenPair {
    double E = 0;
    std::vector<double> c;
    double residual = 0;
};

/// Fit of the four-exponential coefficient ansatz
///   c_j = A w+^j + B w+^{-j} + C w-^j + D w-^{-j},
///   w+- = exp(arccosh(z+-/2)),  z+- roots of b(z^2 - 2) + a z = E.
struct AnsatzFit {
    cplx z_plus, z_minus;
    cplx A, B, C, D;
    double fit_error = 0;  ///< max_j |reconstructed_j - c_j|
};

/// Inverse iteration on the shifted dense system (H - (E + delta) I) v = v,
/// with delta = 1e-11 * scale keeping the factorisation finite at an exact
/// eigenvalue. The shift is refreshed from the Rayleigh quotient, so an E
/// supplied within 1e-6 of a true eigenvalue converges to residual <= 1e-10.
/// For degenerate eigenvalues pass the vectors already obtained; each call
/// deflates against them and returns one new vector. Throws NoConvergence
/// after 50 iterations (stale E).
EigenPair eigenvector_inverse_iteration(const ChainParams& params, double E,
                                        std::span<const std::vector<double>> previous = {});

/// Least-squares fit of (A, B, C, D) against an inverse-iteration vector.
/// Throws DegenerateModes when |z+ - z-| < 1e-8 or |w+-| over/underflows
/// (which includes the b -> 0 collapse of the quadratic).
AnsatzFit ansatz_fit(const ChainParams& params, double E, const EigenPair& pair);

/// Numerical rank of the 4x4 boundary-condition matrix in (A, B, C, D) built
/// from c_{-1} = c_0 = c_{n+1} = c_{n+2} = 0 (rows balanced before the
/// singular-value threshold 1e-10 * ||M||). Expected 3 at a true eigenvalue:
/// exactly one boundary condition is redundant there. Requires b != 0.
int boundary_rank_check(const ChainParams& params, double E);

} // namespace nnchain
