#pragma once

#include <utility>
#include <vector>

#include "nnchain/errors.hpp"

namespace nnchain {

/// Parameters of a finite chain of identical two-level systems with
/// nearest-neighbour (a) and next-nearest-neighbour (b) hopping in the
/// one-excitation sector. All energies share one unit (dimensionless here;
/// couplings produced by the dipole module are in units of the decay rate).
struct ChainParams {
    int n = 1;          ///< number of sites, n >= 1
    double omega0 = 0;  ///< transition frequency (diagonal energy)
    double a = 0;       ///< NN coupling
    double b = 0;       ///< NNN coupling

    void validate() const;
};

/// The one-excitation Hamiltonian block: real symmetric, bandwidth 2,
/// constant along each diagonal. Entries outside the five diagonals are
/// exactly zero, so three scalars suffice.
struct SymmetricBandMatrix {
    int n = 1;
    double diag = 0;  ///< = omega0
    double off1 = 0;  ///< = a
    double off2 = 0;  ///< = b

    /// Row-major dense copy, n*n. Only for the dense oracle and eigensolvers.
    std::vector<double> to_dense() const;
};

SymmetricBandMatrix build_hamiltonian(const ChainParams& params);

/// (m1, m2) = (trace H, trace H^2) of the one-excitation block: the exact sum
/// and sum of squares of its eigenvalues.
std::pair<double, double> trace_moments(const ChainParams& params);

} // namespace nnchain
