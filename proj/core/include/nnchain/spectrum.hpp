#pragma once

#include <vector>

#include "nnchain/chain.hpp"

namespace nnchain {

enum class SolveMethod { bisection, dense_oracle, limit_a0, limit_b0 };

const char* to_string(SolveMethod m);

/// All n one-excitation eigenvalues, ascending. residuals[k] is the guarded
/// minor-sequence magnitude |T_n(E_k)| relative to the largest minor along
/// the sequence (a dimensionless root-quality figure, ~1e-12 for converged
/// roots).
struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    SolveMethod method = SolveMethod::bisection;
};

/// Number of eigenvalues strictly below E: sign changes of
/// (1, T_1(E), ..., T_n(E)). A vanishing minor is resolved by retrying at an
/// E nudged downward by 1e-13 * scale, which preserves the strict count.
int count_below(const ChainParams& params, double E);

/// All n roots by recursive bisection of count_below inside the padded
/// Gershgorin interval omega0 +- (2|a| + 2|b|). Brackets are split until
/// narrower than tol; a count jump >= 2 across such a bracket is emitted as
/// a degenerate root with that multiplicity.
Spectrum eigenvalues_bisection(const ChainParams& params, double tol);

/// Cyclic Jacobi rotations on the dense matrix until the off-diagonal
/// Frobenius norm is below 1e-13 * ||H||_F. Memory guard: n <= 4096.
Spectrum eigenvalues_dense_oracle(const ChainParams& params);

/// Exact spectrum with the NN coupling switched off. The chain splits into
/// the even- and odd-site subchains:
///   n even: E = omega0 - 2b cos(2k pi/(n+2)), k = 1..n/2, each twice;
///   n odd : E = omega0 - 2b cos(2k pi/(n+1)), k = 1..(n-1)/2   (subchain (n-1)/2)
///     union E = omega0 - 2b cos(2k pi/(n+3)), k = 1..(n+1)/2   (subchain (n+1)/2).
/// Both sign conventions generate the same set (k -> reflection), so the even
/// case's E = omega0 - 2b cos(...) is used throughout; the dense oracle
/// confirms. Rejects a != 0.
Spectrum spectrum_a_zero(const ChainParams& params);

/// Exact spectrum with the NNN coupling switched off:
/// E_k = omega0 - 2a cos(k pi/(n+1)), k = 1..n. Rejects b != 0.
Spectrum spectrum_b_zero(const ChainParams& params);

} // namespace nnchain
