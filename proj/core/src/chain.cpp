#include "nnchain/chain.hpp"

#include <cmath>

namespace nnchain {

void ChainParams::validate() const {
    if (n < 1) throw InvalidArgument("ChainParams: n must be >= 1");
    if (!std::isfinite(omega0) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidArgument("ChainParams: all fields must be finite");
}

std::vector<double> SymmetricBandMatrix::to_dense() const {
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        m[i * n + i] = diag;
        if (i + 1 < n) m[i * n + i + 1] = m[(i + 1) * n + i] = off1;
        if (i + 2 < n) m[i * n + i + 2] = m[(i + 2) * n + i] = off2;
    }
    return m;
}

SymmetricBandMatrix build_hamiltonian(const ChainParams& params) {
    params.validate();
    return SymmetricBandMatrix{params.n, params.omega0, params.a, params.b};
}

std::pair<double, double> trace_moments(const ChainParams& params) {
    params.validate();
    const double n = params.n;
    double m1 = n * params.omega0;
    double m2 = n * params.omega0 * params.omega0;
    if (params.n >= 2) m2 += 2 * (n - 1) * params.a * params.a;
    if (params.n >= 3) m2 += 2 * (n - 2) * params.b * params.b;
    return {m1, m2};
}

} // namespace nnchain
