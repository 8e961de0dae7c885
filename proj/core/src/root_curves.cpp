#include "nnchain/root_curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nnchain/spectrum.hpp"

namespace nnchain {

namespace {

constexpr double kPi = std::numbers::pi;

// Distance of w from the nearest tangent pole pi/2 + m*pi.
double pole_distance(cplx w) {
    const double re = std::remainder(w.real() - kPi / 2, kPi);
    return std::hypot(re, w.imag());
}

struct SweepPoint {
    double x;
    cplx alpha;
    AlphaClass cls;
};

// One eigenvalue mapped to its (x, alpha) representation. u^2 and v^2 come
// from the Delta form, which is valid for every gamma including 0 and keeps
// the branch pairing consistent (u v = gamma^2 automatically).
SweepPoint map_eigenvalue(double gamma, double E, double b, double omega0) {
    const double a = 4 * b * gamma * gamma;
    const double l = omega0 - E;
    const cplx z(l + 2 * b, 0);
    const cplx Delta = std::sqrt(z * z - 4 * a * a);
    const cplx u = std::sqrt((z + Delta) / (8 * b));
    const cplx v = std::sqrt((z - Delta) / (8 * b));
    const cplx xs = 0.5 * (std::acos(u) + std::acos(v));
    if (std::fabs(xs.imag()) > 1e-8)
        throw NonRealValue("sweep: x acquired an imaginary part");
    SweepPoint p;
    p.x = xs.real();
    p.alpha = (a > 0) ? std::acos(z / (2 * a)) / 2.0
                      : cplx(0, std::numeric_limits<double>::infinity());
    p.cls = classify_alpha(p.alpha);
    return p;
}

std::vector<SweepPoint> sweep_point(int n, double gamma) {
    ChainParams params{n, 0.0, 4.0 * gamma * gamma, 1.0};
    const Spectrum s = eigenvalues_bisection(params, 1e-12);
    std::vector<SweepPoint> pts;
    pts.reserve(n);
    for (double E : s.eigenvalues) pts.push_back(map_eigenvalue(gamma, E, 1.0, 0.0));
    std::sort(pts.begin(), pts.end(),
              [](const SweepPoint& p, const SweepPoint& q) { return p.x < q.x; });
    return pts;
}

} // namespace

const char* to_string(AlphaClass c) {
    switch (c) {
        case AlphaClass::real: return "real";
        case AlphaClass::pure_imaginary: return "pure_imaginary";
        case AlphaClass::pi_half_plus_imaginary: return "pi_half_plus_imaginary";
    }
    return "?";
}

AlphaClass classify_alpha(cplx alpha) {
    constexpr double tol = 1e-8;
    if (std::fabs(alpha.imag()) <= tol) return AlphaClass::real;
    if (std::fabs(alpha.real()) <= tol) return AlphaClass::pure_imaginary;
    if (std::fabs(alpha.real() - kPi / 2) <= tol) return AlphaClass::pi_half_plus_imaginary;
    throw NonRealValue("classify_alpha: alpha fits no admissible shape");
}

AngleSplit x_y_from_alpha(double gamma, cplx alpha) {
    if (gamma < 0) throw InvalidArgument("x_y_from_alpha: gamma must be >= 0");
    const cplx u = gamma * std::exp(cplx(0, 1) * alpha);
    const cplx v = gamma * std::exp(cplx(0, -1) * alpha);
    const cplx au = std::acos(u), av = std::acos(v);
    const cplx xs = 0.5 * (au + av);
    if (std::fabs(xs.imag()) > 1e-10)
        throw NonRealValue("x_y_from_alpha: x not real (inadmissible alpha)");
    return AngleSplit{xs.real(), 0.5 * (au - av)};
}

cplx y_of_x(double gamma, double x) {
    return std::acos(cplx(2 * gamma * gamma - std::cos(2 * x), 0)) / 2.0;
}

namespace detail {

cplx tangent_residual_c(int n, cplx s, cplx x, SeriesBranch branch) {
    const double m = n + 2;
    const cplx y = std::acos(2.0 * s - std::cos(2.0 * x)) / 2.0;
    if (branch == SeriesBranch::minus)
        return std::tan(y) * std::tan(m * x) - std::tan(x) * std::tan(m * y);
    return std::tan(x) * std::tan(m * x) - std::tan(y) * std::tan(m * y);
}

} // namespace detail

double tangent_residual(int n, double gamma, double x, SeriesBranch branch) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("tangent_residual: n must be even, >= 2");
    const double m = n + 2;
    const cplx y = y_of_x(gamma, x);
    const cplx args[4] = {cplx(x, 0), y, cplx(m * x, 0), m * y};
    for (const cplx& w : args)
        if (pole_distance(w) < 1e-9)
            throw PoleProximity("tangent_residual: tangent argument at pole");
    const cplx r = detail::tangent_residual_c(n, cplx(gamma * gamma, 0), cplx(x, 0), branch);
    // With y real the residual is real; once 2 gamma^2 - cos 2x leaves
    // [-1, 1], y turns imaginary and the residual becomes i times a real
    // function. Either way exactly one component is live.
    if (std::fabs(r.imag()) <= 1e-9 * std::max(1.0, std::fabs(r.real()))) return r.real();
    if (std::fabs(r.real()) <= 1e-9 * std::max(1.0, std::fabs(r.imag()))) return r.imag();
    throw NumericError("tangent_residual: residue neither real nor imaginary");
}

SeriesExpansion series_coefficients(int n, int k, SeriesBranch branch) {
    if (n < 2 || n % 2 != 0) throw InvalidArgument("series_coefficients: n must be even, >= 2");
    if (k < 1 || k > n / 2) throw InvalidArgument("series_coefficients: k out of range");
    const double N = n + 2;
    const double x0 = kPi / 2 + 2 * k * kPi / N;
    const double c = std::cos(x0), s = std::sin(x0);
    const double c2p = c * c, c4p = c2p * c2p, c6p = c4p * c2p, c8p = c4p * c4p;
    const double N2 = N * N;

    SeriesExpansion se;
    se.x0 = x0;
    se.branch = branch;
    se.coefficients[0] = x0;

    if (branch == SeriesBranch::minus && std::fabs(s) < 1e-12) {
        // sin x0 = 0: the root curve through x0 is identically x0 (the
        // residual vanishes there for every gamma), so all corrections are 0.
        return se;
    }

    if (branch == SeriesBranch::minus) {
        se.coefficients[1] = -s / (2 * c);
        se.coefficients[2] = -(2 * c2p - 1) / (8 * s * c2p * c);
        se.coefficients[3] = (4 * N2 * c8p + 6 * c6p - 6 * N2 * c6p - 8 * c4p +
                              2 * N2 * c4p + 8 * c2p - 3) /
                             (48 * s * s * s * c4p * c);
    } else {
        se.coefficients[1] = -c / (2 * s);
        // The gamma^4 numerator is 2 cos^2 x0 - 1, mirroring the minus branch
        // with the sine/cosine roles exchanged (established against
        // high-precision roots of the plus equation).
        se.coefficients[2] = -(2 * c2p - 1) / (8 * c * s * s * s);
        se.coefficients[3] = (4 * N2 * c8p - 6 * c6p - 10 * N2 * c6p + 10 * c4p +
                              8 * N2 * c4p - 10 * c2p - 2 * N2 * c2p + 3) /
                             (48 * s * s * s * s * s * c2p * c);
    }
    return se;
}

double series_x(int n, int k, double gamma, SeriesBranch branch) {
    const SeriesExpansion se = series_coefficients(n, k, branch);
    const double g2 = gamma * gamma;
    return se.coefficients[0] +
           g2 * (se.coefficients[1] + g2 * (se.coefficients[2] + g2 * se.coefficients[3]));
}

std::optional<double> tangent_root_near(int n, double gamma, SeriesBranch branch,
                                        double center, double radius) {
    auto eval = [&](double x) -> std::optional<double> {
        try {
            return tangent_residual(n, gamma, x, branch);
        } catch (const PoleProximity&) {
            return std::nullopt;
        }
    };

    const int steps = 400;
    double prev_x = center - radius;
    auto prev_f = eval(prev_x);
    double best_root = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= steps; ++i) {
        const double x = center - radius + 2 * radius * i / steps;
        auto f = eval(x);
        if (prev_f && f && *prev_f * *f <= 0 && *prev_f != *f) {
            double lo = prev_x, hi = x, flo = *prev_f;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                auto fm = eval(mid);
                if (!fm) break;
                if ((flo <= 0) != (*fm <= 0)) hi = mid;
                else { lo = mid; flo = *fm; }
                if (hi - lo < 1e-15 * std::max(1.0, std::fabs(mid))) break;
            }
            const double root = 0.5 * (lo + hi);
            auto fr = eval(root);
            // A pole also flips sign; keep only brackets where the residual
            // actually collapses.
            if (fr && std::fabs(*fr) < 1e-5 * std::max(1.0, std::fabs(*prev_f))) {
                if (std::fabs(root - center) < best_dist) {
                    best_dist = std::fabs(root - center);
                    best_root = root;
                }
            }
        }
        if (f) { prev_x = x; prev_f = f; }
    }
    if (best_dist == std::numeric_limits<double>::infinity()) return std::nullopt;
    return best_root;
}

double energy_from_x(double gamma, double x) {
    const double c = std::cos(2 * x);
    return -2.0 - 4.0 * c * (2 * gamma * gamma - c);
}

bool is_spurious_tangent_root(double gamma, double x, double tol) {
    const double c2x = std::cos(2 * x);
    const double g2 = gamma * gamma;
    // cos 2x = gamma^2: the x = y / x + y = pi lines; cos 2x = 2 gamma^2 - 1:
    // the y = 0 line. All three zero the tangent combinations identically.
    return std::fabs(c2x - g2) < tol || std::fabs(c2x - (2 * g2 - 1)) < tol;
}

double lambda_from_alpha(const ChainParams& params, cplx alpha) {
    params.validate();
    const cplx c2a = std::cos(2.0 * alpha);
    if (std::fabs(c2a.imag()) > 1e-10 * std::max(1.0, std::fabs(c2a.real())))
        throw NonRealValue("lambda_from_alpha: cos 2alpha not real");
    return 2 * params.a * c2a.real() - 2 * params.b;
}

std::vector<RootCurve> sweep_curves(int n, const std::vector<double>& gamma_grid) {
    if (n < 1) throw InvalidArgument("sweep_curves: n must be >= 1");
    if (gamma_grid.empty()) throw InvalidArgument("sweep_curves: empty grid");
    for (size_t i = 0; i < gamma_grid.size(); ++i) {
        if (gamma_grid[i] < 0) throw InvalidArgument("sweep_curves: negative gamma");
        if (i > 0 && gamma_grid[i] <= gamma_grid[i - 1])
            throw InvalidArgument("sweep_curves: grid must be strictly ascending");
    }

    std::vector<RootCurve> curves(n);
    for (int j = 0; j < n; ++j) {
        curves[j].branch_index = j;
        curves[j].gamma_grid = gamma_grid;
        curves[j].x_values.reserve(gamma_grid.size());
        curves[j].alpha_values.reserve(gamma_grid.size());
        curves[j].alpha_class.reserve(gamma_grid.size());
    }

    std::vector<double> prev_x;
    for (size_t gi = 0; gi < gamma_grid.size(); ++gi) {
        std::vector<SweepPoint> pts = sweep_point(n, gamma_grid[gi]);
        if (gi > 0) {
            // Branches are continued to the nearest x. With both lists sorted
            // the monotone pairing is the nearest-neighbour assignment; the
            // only failure mode is two candidates too close to tell apart.
            for (int j = 0; j + 1 < n; ++j) {
                const double mid = 0.5 * (prev_x[j] + prev_x[j + 1]);
                const double d0 = std::fabs(pts[j].x - mid);
                const double d1 = std::fabs(pts[j + 1].x - mid);
                if (std::fabs(pts[j + 1].x - pts[j].x) < 1e-6 && std::fabs(d0 - d1) < 1e-9 &&
                    prev_x[j + 1] - prev_x[j] > 1e-4)
                    throw AmbiguousBranch("sweep_curves: continuation ambiguous; refine grid");
            }
        }
        prev_x.resize(n);
        for (int j = 0; j < n; ++j) {
            prev_x[j] = pts[j].x;
            curves[j].x_values.push_back(pts[j].x);
            curves[j].alpha_values.push_back(pts[j].alpha);
            curves[j].alpha_class.push_back(pts[j].cls);
        }
    }
    return curves;
}

std::vector<int> degeneracy_crossings(const std::vector<RootCurve>& curves) {
    const int n = static_cast<int>(curves.size());
    if (n < 2 || n % 2 != 0)
        throw InvalidArgument("degeneracy_crossings: needs an even number of curves");
    const std::vector<double>& grid = curves[0].gamma_grid;
    for (const auto& c : curves)
        if (c.gamma_grid != grid)
            throw InvalidArgument("degeneracy_crossings: curves from different sweeps");

    auto pair_sep = [&](int p, double gamma) {
        std::vector<SweepPoint> pts = sweep_point(n, gamma);
        return pts[2 * p + 1].x - pts[2 * p].x;
    };

    std::vector<int> counts(n / 2, 0);
    for (int p = 0; p < n / 2; ++p) {
        std::vector<double> s(grid.size());
        for (size_t i = 0; i < grid.size(); ++i)
            s[i] = curves[2 * p + 1].x_values[i] - curves[2 * p].x_values[i];

        if (s.front() <= 1e-7) ++counts[p];

        for (size_t i = 1; i + 1 < s.size(); ++i) {
            if (!(s[i] <= s[i - 1] && s[i] <= s[i + 1])) continue;
            if (s[i] > 1e-2) continue;  // far from any coincidence
            // Ternary refinement of the separation minimum.
            double lo = grid[i - 1], hi = grid[i + 1];
            for (int it = 0; it < 120 && hi - lo > 1e-13; ++it) {
                const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                if (pair_sep(p, m1) < pair_sep(p, m2)) hi = m2;
                else lo = m1;
            }
            const double smin = pair_sep(p, 0.5 * (lo + hi));
            if (smin < 1e-7) ++counts[p];
            else if (smin < 1e-4)
                throw GridTooCoarse("degeneracy_crossings: unresolved separation minimum");
        }
    }
    return counts;
}

} // namespace nnchain
