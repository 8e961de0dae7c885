#include "nnchain/eigenvectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dense.hpp"

namespace nnchain {

namespace {

double norm2(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

void orthogonalize(std::vector<double>& v, std::span<const std::vector<double>> basis) {
    for (const auto& u : basis) {
        const double proj = std::inner_product(v.begin(), v.end(), u.begin(), 0.0);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= proj * u[i];
    }
}

std::vector<double> apply_band(const ChainParams& p, const std::vector<double>& v) {
    const int n = p.n;
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i) {
        w[i] = p.omega0 * v[i];
        if (i >= 1) w[i] += p.a * v[i - 1];
        if (i + 1 < n) w[i] += p.a * v[i + 1];
        if (i >= 2) w[i] += p.b * v[i - 2];
        if (i + 2 < n) w[i] += p.b * v[i + 2];
    }
    return w;
}

// The two exponential modes of the coefficient recurrence (with omega0
// shifted away) and their base w = exp(arccosh(z/2)).
struct Modes {
    cplx z_plus, z_minus, w_plus, w_minus;
};

Modes ansatz_modes(const ChainParams& p, double E) {
    if (std::fabs(p.b) < 1e-12 * std::max(1.0, std::fabs(p.a)))
        throw DegenerateModes("ansatz: quadratic collapses at b = 0");
    const double es = E - p.omega0;
    const cplx disc = std::sqrt(cplx(p.a * p.a + 4 * p.b * (2 * p.b + es), 0));
    Modes m;
    m.z_plus = (-p.a + disc) / (2 * p.b);
    m.z_minus = (-p.a - disc) / (2 * p.b);
    if (std::abs(m.z_plus - m.z_minus) < 1e-8)
        throw DegenerateModes("ansatz: z+ ~ z-");
    m.w_plus = std::exp(std::acosh(m.z_plus / 2.0));
    m.w_minus = std::exp(std::acosh(m.z_minus / 2.0));
    for (cplx w : {m.w_plus, m.w_minus}) {
        const double mag = std::abs(w);
        if (!std::isfinite(mag) || mag > 1e100 || mag < 1e-100)
            throw DegenerateModes("ansatz: w over/underflow");
    }
    return m;
}

cplx cpow_int(cplx w, int j) {
    if (j == 0) return 1.0;
    const cplx base = j > 0 ? w : 1.0 / w;
    cplx r = 1.0;
    for (int i = 0; i < std::abs(j); ++i) r *= base;
    return r;
}

// Least squares for a tall complex system by column-pivoted Householder QR.
// Diagonal entries below 1e-13 of the leading one are truncated: the
// exponential basis can become numerically redundant (w near a unit root),
// and the fit should then live in the well-conditioned subspace.
std::vector<cplx> qr_least_squares(std::vector<cplx> A, int rows, int cols,
                                   std::vector<cplx> rhs) {
    std::vector<int> perm(cols);
    for (int j = 0; j < cols; ++j) perm[j] = j;

    double rmax = 0;
    int rank = cols;
    for (int k = 0; k < cols; ++k) {
        int best = k;
        double best_nrm = -1;
        for (int j = k; j < cols; ++j) {
            double nrm = 0;
            for (int i = k; i < rows; ++i) nrm += std::norm(A[i * cols + j]);
            if (nrm > best_nrm) { best_nrm = nrm; best = j; }
        }
        if (best != k) {
            for (int i = 0; i < rows; ++i) std::swap(A[i * cols + k], A[i * cols + best]);
            std::swap(perm[k], perm[best]);
        }
        const double nrm = std::sqrt(std::max(best_nrm, 0.0));
        if (k == 0) rmax = nrm;
        if (nrm <= 1e-13 * rmax) { rank = k; break; }

        cplx akk = A[k * cols + k];
        const double akkabs = std::abs(akk);
        const cplx phase = akkabs > 0 ? akk / akkabs : cplx(1, 0);
        const cplx alpha = -phase * nrm;
        std::vector<cplx> u(rows, 0.0);
        for (int i = k; i < rows; ++i) u[i] = A[i * cols + k];
        u[k] -= alpha;
        double unrm2 = 0;
        for (int i = k; i < rows; ++i) unrm2 += std::norm(u[i]);
        if (unrm2 == 0.0) continue;
        for (int j = k; j < cols; ++j) {
            cplx dot = 0;
            for (int i = k; i < rows; ++i) dot += std::conj(u[i]) * A[i * cols + j];
            dot *= 2.0 / unrm2;
            for (int i = k; i < rows; ++i) A[i * cols + j] -= dot * u[i];
        }
        cplx dot = 0;
        for (int i = k; i < rows; ++i) dot += std::conj(u[i]) * rhs[i];
        dot *= 2.0 / unrm2;
        for (int i = k; i < rows; ++i) rhs[i] -= dot * u[i];
    }

    std::vector<cplx> y(cols, 0.0);
    for (int i = rank - 1; i >= 0; --i) {
        cplx s = rhs[i];
        for (int j = i + 1; j < rank; ++j) s -= A[i * cols + j] * y[j];
        const cplx d = A[i * cols + i];
        y[i] = (std::abs(d) > 0) ? s / d : cplx(0, 0);
    }
    std::vector<cplx> x(cols, 0.0);
    for (int j = 0; j < cols; ++j) x[perm[j]] = y[j];
    return x;
}

} // namespace

EigenPair eigenvector_inverse_iteration(const ChainParams& params, double E,
                                        std::span<const std::vector<double>> previous) {
    params.validate();
    const int n = params.n;
    if (n > 4096) throw SizeLimit("eigenvector_inverse_iteration: n > 4096");
    for (const auto& u : previous)
        if (static_cast<int>(u.size()) != n)
            throw InvalidArgument("eigenvector_inverse_iteration: bad deflation vector size");

    const double scale = std::max(1.0, std::fabs(params.omega0) +
                                           2 * std::fabs(params.a) + 2 * std::fabs(params.b));
    const double delta = 1e-11 * scale;
    const std::vector<double> dense = build_hamiltonian(params).to_dense();

    // Deterministic start vector, salted per deflation depth: the converged
    // vector of an earlier call is close to the eigenspace projection of its
    // own start, so reusing one start would be annihilated by deflation.
    std::vector<double> v(n);
    unsigned long long state = 0x9e3779b97f4a7c15ull ^
                               (static_cast<unsigned long long>(n) << 32) ^
                               ((previous.size() + 1) * 0xbf58476d1ce4e5b9ull);
    double nv = 0;
    for (int attempt = 0; attempt < 8 && nv <= 1e-6; ++attempt) {
        for (int i = 0; i < n; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        }
        orthogonalize(v, previous);
        nv = norm2(v);
    }
    if (nv <= 1e-6)
        throw InvalidArgument("eigenvector_inverse_iteration: deflated start vanished");
    for (double& x : v) x /= nv;

    auto factor = [&](double sh) {
        std::vector<double> m = dense;
        for (int i = 0; i < n; ++i) m[i * n + i] -= sh;
        return detail::lu_factor(std::move(m), n);
    };
    // The initial jitter keeps the factorisation away from an exact zero
    // pivot; once the Rayleigh quotient takes over it is retired, which lets
    // the vector contamination (and residual) drop to solver precision
    // instead of flooring at O(delta).
    detail::LuFactors lu = factor(E + delta);

    // Iterate past the 1e-10 contract down to the achievable floor: vectors
    // handed back for later deflation must be as accurate as possible or
    // their errors become the next call's residual floor.
    double best_residual = std::numeric_limits<double>::infinity();
    double best_rho = E;
    std::vector<double> best_v;
    int stalled = 0;
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<double> w = v;
        detail::lu_solve_inplace(lu, w);
        orthogonalize(w, previous);
        const double nw = norm2(w);
        if (nw == 0.0 || !std::isfinite(nw))
            throw NoConvergence("eigenvector_inverse_iteration: iterate collapsed");
        for (double& x : w) x /= nw;
        v = std::move(w);

        const std::vector<double> hv = apply_band(params, v);
        const double rho = std::inner_product(v.begin(), v.end(), hv.begin(), 0.0);
        double r2 = 0;
        for (int i = 0; i < n; ++i) {
            const double d = hv[i] - rho * v[i];
            r2 += d * d;
        }
        const double residual = std::sqrt(r2);
        if (residual < best_residual) {
            best_residual = residual;
            best_rho = rho;
            best_v = v;
            stalled = 0;
        } else {
            ++stalled;
        }
        if (best_residual <= 1e-13 * scale) break;
        if (best_residual <= 1e-10 && stalled >= 2) break;
        if (iter >= 1) {
            lu = factor(rho);
            if (lu.singular) lu = factor(rho + 1e-15 * scale);
        }
    }
    if (best_residual > 1e-10)
        throw NoConvergence("eigenvector_inverse_iteration: no convergence in 50 iterations");
    if (std::fabs(best_rho - E) > 1e-5 * scale)
        throw NoConvergence("eigenvector_inverse_iteration: converged far from requested E");
    // Fix the overall sign for reproducibility.
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::fabs(best_v[i]) > std::fabs(best_v[imax])) imax = i;
    if (best_v[imax] < 0)
        for (double& x : best_v) x = -x;
    return EigenPair{best_rho, std::move(best_v), best_residual};
}

AnsatzFit ansatz_fit(const ChainParams& params, double E, const EigenPair& pair) {
    params.validate();
    const int n = params.n;
    if (static_cast<int>(pair.c.size()) != n)
        throw InvalidArgument("ansatz_fit: coefficient vector size mismatch");
    const Modes m = ansatz_modes(params, E);

    std::vector<cplx> A(static_cast<size_t>(n) * 4);
    std::vector<cplx> rhs(n);
    for (int j = 1; j <= n; ++j) {
        A[(j - 1) * 4 + 0] = cpow_int(m.w_plus, j);
        A[(j - 1) * 4 + 1] = cpow_int(m.w_plus, -j);
        A[(j - 1) * 4 + 2] = cpow_int(m.w_minus, j);
        A[(j - 1) * 4 + 3] = cpow_int(m.w_minus, -j);
        rhs[j - 1] = pair.c[j - 1];
    }
    // Column scaling keeps the QR honest when |w|^n spans many decades.
    double cs[4];
    for (int k = 0; k < 4; ++k) {
        double mx = 0;
        for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(A[i * 4 + k]));
        cs[k] = (mx > 0) ? mx : 1.0;
        for (int i = 0; i < n; ++i) A[i * 4 + k] /= cs[k];
    }
    std::vector<cplx> Acopy = A;
    std::vector<cplx> amp = qr_least_squares(std::move(A), n, 4, rhs);

    double fit_error = 0;
    for (int i = 0; i < n; ++i) {
        cplx rec = 0;
        for (int k = 0; k < 4; ++k) rec += Acopy[i * 4 + k] * amp[k];
        fit_error = std::max(fit_error, std::abs(rec - cplx(pair.c[i], 0)));
    }

    AnsatzFit fit;
    fit.z_plus = m.z_plus;
    fit.z_minus = m.z_minus;
    fit.A = amp[0] / cs[0];
    fit.B = amp[1] / cs[1];
    fit.C = amp[2] / cs[2];
    fit.D = amp[3] / cs[3];
    fit.fit_error = fit_error;
    return fit;
}

int boundary_rank_check(const ChainParams& params, double E) {
    params.validate();
    if (params.b == 0.0)
        throw InvalidArgument("boundary_rank_check: ansatz undefined for b = 0");
    const int n = params.n;
    const Modes m = ansatz_modes(params, E);

    const int js[4] = {-1, 0, n + 1, n + 2};
    cplx M[4][4];
    for (int r = 0; r < 4; ++r) {
        M[r][0] = cpow_int(m.w_plus, js[r]);
        M[r][1] = cpow_int(m.w_plus, -js[r]);
        M[r][2] = cpow_int(m.w_minus, js[r]);
        M[r][3] = cpow_int(m.w_minus, -js[r]);
    }
    // Row/column balancing: rank-preserving, keeps |w|^(n+2) from drowning
    // the small singular values.
    for (int r = 0; r < 4; ++r) {
        double mx = 0;
        for (int c = 0; c < 4; ++c) mx = std::max(mx, std::abs(M[r][c]));
        if (mx > 0)
            for (int c = 0; c < 4; ++c) M[r][c] /= mx;
    }
    for (int c = 0; c < 4; ++c) {
        double mx = 0;
        for (int r = 0; r < 4; ++r) mx = std::max(mx, std::abs(M[r][c]));
        if (mx > 0)
            for (int r = 0; r < 4; ++r) M[r][c] /= mx;
    }

    // Singular values by one-sided Jacobi on the columns. Working on the
    // matrix itself (not its Gram matrix) resolves sigma_min down to machine
    // precision, which the 1e-10 threshold needs.
    for (int sweep = 0; sweep < 30; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                cplx g = 0;
                double aii = 0, ajj = 0;
                for (int r = 0; r < 4; ++r) {
                    g += std::conj(M[r][i]) * M[r][j];
                    aii += std::norm(M[r][i]);
                    ajj += std::norm(M[r][j]);
                }
                const double mag = std::abs(g);
                if (mag <= 1e-17 * std::sqrt(aii * ajj) || mag == 0.0) continue;
                rotated = true;
                const cplx phase = g / mag;
                const double theta = (ajj - aii) / (2 * mag);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                const double cs = 1.0 / std::sqrt(t * t + 1);
                const double sn = t * cs;
                for (int r = 0; r < 4; ++r) {
                    const cplx mi = M[r][i];
                    const cplx mj = M[r][j] * std::conj(phase);
                    M[r][i] = cs * mi - sn * mj;
                    M[r][j] = sn * mi + cs * mj;
                }
            }
        if (!rotated) break;
    }
    double sigma[4];
    for (int i = 0; i < 4; ++i) {
        double s = 0;
        for (int r = 0; r < 4; ++r) s += std::norm(M[r][i]);
        sigma[i] = std::sqrt(s);
    }
    std::sort(sigma, sigma + 4, std::greater<>());

    if (sigma[0] == 0.0) return 0;
    int rank = 0;
    for (double s : sigma)
        if (s > 1e-10 * sigma[0]) ++rank;
    return rank;
}

} // namespace nnchain
