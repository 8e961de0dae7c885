#include "nnchain/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>

#include "dense.hpp"
#include "nnchain/determinant.hpp"

namespace nnchain {

namespace {

double gershgorin_radius(const ChainParams& p) {
    return 2 * std::fabs(p.a) + 2 * std::fabs(p.b);
}

double problem_scale(const ChainParams& p) {
    return std::max(1.0, std::fabs(p.omega0) + gershgorin_radius(p));
}

// Scale-free root quality: |T_n| relative to the largest minor magnitude.
double minor_residual(const ChainParams& p, double E) {
    MinorSequence seq = minor_sequence(p, E);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : seq.scaled) best = std::max(best, s.log2_abs());
    const double last = seq.scaled.back().log2_abs();
    if (std::isinf(last) && last < 0) return 0.0;
    return std::exp2(last - best);
}

void fill_residuals(const ChainParams& p, Spectrum& s) {
    s.residuals.resize(s.eigenvalues.size());
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        s.residuals[i] = minor_residual(p, s.eigenvalues[i]);
}

// Rayleigh-quotient polish of one root near E0, deflated against the
// vectors already extracted from the same cluster. Sign counting on the
// minors cannot localise a multiple root better than ~sqrt(eps) -- the
// polynomial is quadratically flat there -- but the matrix route recovers
// each eigenvalue to machine precision.
double rayleigh_polish(const ChainParams& p, const std::vector<double>& dense, double E0,
                       std::vector<std::vector<double>>& deflate) {
    const int n = p.n;
    auto project_out = [&](std::vector<double>& w) {
        for (const auto& u : deflate) {
            const double d = std::inner_product(w.begin(), w.end(), u.begin(), 0.0);
            for (int i = 0; i < n; ++i) w[i] -= d * u[i];
        }
    };
    // Fresh start per cluster member: reusing one start would leave nothing
    // in the still-wanted eigendirection after deflation.
    std::vector<double> v(n);
    std::uint64_t state =
        0x243f6a8885a308d3ull ^ (static_cast<std::uint64_t>(n) << 20) ^
        (static_cast<std::uint64_t>(deflate.size() + 1) * 0x9e3779b97f4a7c15ull);
    for (int attempt = 0; attempt < 8; ++attempt) {
        for (int i = 0; i < n; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        }
        project_out(v);
        const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (nv > 1e-6) {
            for (double& x : v) x /= nv;
            break;
        }
    }

    double sigma = E0, rho = E0;
    for (int iter = 0; iter < 8; ++iter) {
        std::vector<double> m = dense;
        for (int i = 0; i < n; ++i) m[i * n + i] -= sigma;
        detail::LuFactors lu = detail::lu_factor(std::move(m), n);
        if (lu.singular) break;  // exactly on the eigenvalue already
        detail::lu_solve_inplace(lu, v);
        project_out(v);
        const double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (!(nv > 0) || !std::isfinite(nv)) break;
        for (double& x : v) x /= nv;
        double num = 0;
        for (int i = 0; i < n; ++i) {
            double h = p.omega0 * v[i];
            if (i >= 1) h += p.a * v[i - 1];
            if (i + 1 < n) h += p.a * v[i + 1];
            if (i >= 2) h += p.b * v[i - 2];
            if (i + 2 < n) h += p.b * v[i + 2];
            num += v[i] * h;
        }
        rho = num;
        if (std::fabs(rho - sigma) < 1e-15 * std::max(1.0, std::fabs(rho))) break;
        // Hold the bisection shift for the first solve so the cluster
        // directions dominate before the Rayleigh update takes over.
        if (iter >= 1) sigma = rho;
    }
    deflate.push_back(v);
    return rho;
}

// Bisection boundaries inside a sign-noise band are unreliable, so roots
// closer than the band width get a matrix-side polish. Exact degeneracies
// collapse onto one value (and are reported as repeated); split-but-close
// pairs survive because each polish deflates against the previous vectors.
void cluster_and_polish(const ChainParams& p, std::vector<double>& eig) {
    const double tol = 1e-7 * problem_scale(p);
    std::vector<double> dense;
    size_t i = 0;
    while (i < eig.size()) {
        size_t j = i + 1;
        while (j < eig.size() && eig[j] - eig[j - 1] < tol) ++j;
        if (j - i >= 2) {
            if (dense.empty()) dense = build_hamiltonian(p).to_dense();
            std::vector<std::vector<double>> deflate;
            for (size_t k = i; k < j; ++k)
                eig[k] = rayleigh_polish(p, dense, eig[k], deflate);
            // members of one exact eigenvalue agree to machine precision now;
            // snap them so callers see clean multiplicities
            std::sort(eig.begin() + i, eig.begin() + j);
            for (size_t k = i + 1; k < j; ++k)
                if (eig[k] - eig[k - 1] < 1e-12 * problem_scale(p)) eig[k] = eig[k - 1];
        }
        i = j;
    }
    std::sort(eig.begin(), eig.end());
}

} // namespace

const char* to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::bisection: return "bisection";
        case SolveMethod::dense_oracle: return "dense_oracle";
        case SolveMethod::limit_a0: return "limit_a0";
        case SolveMethod::limit_b0: return "limit_b0";
    }
    return "?";
}

int count_below(const ChainParams& params, double E) {
    params.validate();
    double probe = E;
    double delta = 1e-13 * std::max({1.0, std::fabs(E), problem_scale(params)});
    for (int attempt = 0; attempt < 60; ++attempt) {
        MinorSequence seq = minor_sequence(params, probe);
        bool has_zero = false;
        int changes = 0;
        double prev = 1.0;  // T_0 = 1
        for (const auto& s : seq.scaled) {
            if (s.mantissa == 0.0) { has_zero = true; break; }
            if ((prev > 0) != (s.mantissa > 0)) ++changes;
            prev = s.mantissa;
        }
        if (!has_zero) return changes;
        // Nudge downward: keeps the count strict (eigenvalues exactly at E
        // stay uncounted).
        probe = E - delta;
        delta *= 2;
    }
    throw NumericError("count_below: persistent zero minor after perturbation");
}

Spectrum eigenvalues_bisection(const ChainParams& params, double tol) {
    params.validate();
    if (!(tol > 0)) throw InvalidArgument("eigenvalues_bisection: tol must be > 0");

    const double r = gershgorin_radius(params);
    const double pad = 1e-6 * problem_scale(params);
    double lo = params.omega0 - r - pad;
    double hi = params.omega0 + r + pad;

    Spectrum out;
    out.method = SolveMethod::bisection;
    out.eigenvalues.reserve(params.n);

    struct Seg { double lo, hi; int clo, chi; };
    std::vector<Seg> stack;
    stack.push_back({lo, hi, count_below(params, lo), count_below(params, hi)});

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const int roots = s.chi - s.clo;
        if (roots <= 0) continue;
        const double mid = 0.5 * (s.lo + s.hi);
        if (s.hi - s.lo <= tol || mid <= s.lo || mid >= s.hi) {
            for (int i = 0; i < roots; ++i) out.eigenvalues.push_back(mid);
            continue;
        }
        // The zero-minor retry inside count_below may answer for a point a
        // few ulps away; clamping keeps segment counts consistent so the
        // telescoped total stays exactly n.
        const int cm = std::clamp(count_below(params, mid), s.clo, s.chi);
        stack.push_back({s.lo, mid, s.clo, cm});
        stack.push_back({mid, s.hi, cm, s.chi});
    }

    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    cluster_and_polish(params, out.eigenvalues);
    fill_residuals(params, out);
    return out;
}

Spectrum eigenvalues_dense_oracle(const ChainParams& params) {
    params.validate();
    if (params.n > 4096) throw SizeLimit("eigenvalues_dense_oracle: n > 4096");
    Spectrum out;
    out.method = SolveMethod::dense_oracle;
    out.eigenvalues = detail::jacobi_eigenvalues(build_hamiltonian(params).to_dense(),
                                                 params.n, 1e-13);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    fill_residuals(params, out);
    return out;
}

Spectrum spectrum_a_zero(const ChainParams& params) {
    params.validate();
    if (params.a != 0.0) throw InvalidArgument("spectrum_a_zero: requires a = 0");
    const int n = params.n;
    const double w0 = params.omega0, b = params.b;
    const double pi = std::numbers::pi;

    Spectrum out;
    out.method = SolveMethod::limit_a0;
    if (n % 2 == 0) {
        for (int k = 1; k <= n / 2; ++k) {
            const double e = w0 - 2 * b * std::cos(2 * k * pi / (n + 2));
            out.eigenvalues.push_back(e);
            out.eigenvalues.push_back(e);
        }
    } else {
        for (int k = 1; k <= (n - 1) / 2; ++k)
            out.eigenvalues.push_back(w0 - 2 * b * std::cos(2 * k * pi / (n + 1)));
        for (int k = 1; k <= (n + 1) / 2; ++k)
            out.eigenvalues.push_back(w0 - 2 * b * std::cos(2 * k * pi / (n + 3)));
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    fill_residuals(params, out);
    return out;
}

Spectrum spectrum_b_zero(const ChainParams& params) {
    params.validate();
    if (params.b != 0.0) throw InvalidArgument("spectrum_b_zero: requires b = 0");
    const double pi = std::numbers::pi;
    Spectrum out;
    out.method = SolveMethod::limit_b0;
    for (int k = 1; k <= params.n; ++k)
        out.eigenvalues.push_back(params.omega0 -
                                  2 * params.a * std::cos(k * pi / (params.n + 1)));
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    fill_residuals(params, out);
    return out;
}

} // namespace nnchain
