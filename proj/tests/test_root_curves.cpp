#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "nnchain/chebyshev.hpp"
#include "nnchain/root_curves.hpp"
#include "nnchain/spectrum.hpp"
#include "test_helpers.hpp"

using namespace nnchain;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("x_y_from_alpha reference points") {
    AngleSplit s0 = x_y_from_alpha(0.0, cplx(0.3, 0.0));
    CHECK(s0.x == doctest::Approx(kPi / 2).epsilon(1e-14));
    CHECK(std::abs(s0.y) < 1e-14);

    AngleSplit s1 = x_y_from_alpha(0.5, cplx(0.0));
    CHECK(s1.x == doctest::Approx(kPi / 3).epsilon(1e-14));
    CHECK(std::abs(s1.y) < 1e-14);

    const double g = 0.3;
    const cplx al(0.4, 0.0);
    AngleSplit s = x_y_from_alpha(g, al);
    CHECK(std::abs(std::cos(cplx(s.x) + s.y) - g * std::exp(cplx(0, 1) * al)) < 1e-12);
    CHECK(std::abs(std::cos(cplx(s.x) - s.y) - g * std::exp(cplx(0, -1) * al)) < 1e-12);

    // generic complex alpha is inadmissible: x picks up an imaginary part
    CHECK_THROWS_AS(x_y_from_alpha(0.5, cplx(0.3, 0.2)), NonRealValue);
    CHECK_THROWS_AS(x_y_from_alpha(-0.1, cplx(0.0)), InvalidArgument);
}

TEST_CASE("y_of_x satisfies its defining identity") {
    testutil::Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const double g = rng.uniform(0, 1.5);
        const double x = rng.uniform(0, kPi);
        const cplx y = y_of_x(g, x);
        CHECK(std::abs(std::cos(2.0 * y) - cplx(2 * g * g - std::cos(2 * x))) < 1e-12);
    }
    // 2 gamma^2 - cos 2x = 1  ->  y = 0 (arccos near 1 resolves to ~sqrt(eps))
    const double g = 0.5;  // cos 2x = -0.5 at x = pi/3
    CHECK(std::abs(y_of_x(g, kPi / 3)) < 1e-7);
    // gamma = 0: y = pi/2 - x on the principal branch
    CHECK(y_of_x(0.0, 0.7).real() == doctest::Approx(kPi / 2 - 0.7).epsilon(1e-12));
}

TEST_CASE("tangent residual zeros and poles") {
    // x = y line: both branches cancel identically (cos 2x = gamma^2)
    const double g = 0.3;
    const double xy = 0.5 * std::acos(g * g);
    CHECK(std::fabs(tangent_residual(6, g, xy, SeriesBranch::minus)) < 1e-12);
    CHECK(std::fabs(tangent_residual(6, g, xy, SeriesBranch::plus)) < 1e-12);
    CHECK(is_spurious_tangent_root(g, xy));

    // gamma = 0 roots of the minus family at x0 = pi/2 + 2k pi/8, n = 6
    for (int k = 1; k <= 3; ++k) {
        const double x0 = kPi / 2 + 2 * k * kPi / 8;
        if (std::fabs(std::sin(x0)) < 1e-12) continue;  // x0 = pi sits on a y-pole at gamma=0
        CHECK(std::fabs(tangent_residual(6, 0.0, x0, SeriesBranch::minus)) < 1e-9);
    }

    CHECK_THROWS_AS(tangent_residual(6, 0.1, kPi / 2, SeriesBranch::minus), PoleProximity);
    CHECK_THROWS_AS(tangent_residual(5, 0.1, 0.3, SeriesBranch::minus), InvalidArgument);
}

TEST_CASE("tangent roots biject with the spectrum once the x = y line is removed") {
    // n = 4, gamma = 0.2: collect roots of both families over (0, pi),
    // drop the spurious x = y / x+y = pi roots, map to E and deduplicate.
    const int n = 4;
    const double g = 0.2;
    std::vector<double> energies;
    for (SeriesBranch br : {SeriesBranch::minus, SeriesBranch::plus}) {
        const int steps = 6000;
        double prev_x = 0, prev_f = 0;
        bool have_prev = false;
        for (int i = 1; i < steps; ++i) {
            const double x = kPi * i / steps;
            double f;
            try {
                f = tangent_residual(n, g, x, br);
            } catch (const PoleProximity&) {
                have_prev = false;
                continue;
            }
            if (have_prev && prev_f * f < 0) {
                double lo = prev_x, hi = x, flo = prev_f;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    double fm;
                    try {
                        fm = tangent_residual(n, g, mid, br);
                    } catch (const PoleProximity&) {
                        break;
                    }
                    if ((flo < 0) != (fm < 0)) hi = mid;
                    else { lo = mid; flo = fm; }
                }
                const double root = 0.5 * (lo + hi);
                bool genuine_zero = false;
                try {
                    const double fr = tangent_residual(n, g, root, br);
                    genuine_zero = std::fabs(fr) < 1e-5 * std::max(1.0, std::fabs(prev_f));
                } catch (const PoleProximity&) {
                    // sign change carried by a pole, not a root
                }
                if (genuine_zero && !is_spurious_tangent_root(g, root))
                    energies.push_back(energy_from_x(g, root));
            }
            prev_x = x;
            prev_f = f;
            have_prev = true;
        }
    }
    std::sort(energies.begin(), energies.end());
    std::vector<double> uniq;
    for (double e : energies)
        if (uniq.empty() || std::fabs(e - uniq.back()) > 1e-7) uniq.push_back(e);

    const Spectrum s = eigenvalues_bisection({n, 0.0, 4 * g * g, 1.0}, 1e-12);
    REQUIRE(uniq.size() == s.eigenvalues.size());
    for (size_t i = 0; i < uniq.size(); ++i)
        CHECK(std::fabs(uniq[i] - s.eigenvalues[i]) < 1e-8);
}

TEST_CASE("series coefficients and evaluation") {
    // minus family at x0 = 3pi/4: order-gamma^2 coefficient is +1/2
    SeriesExpansion se = series_coefficients(6, 1, SeriesBranch::minus);
    CHECK(se.x0 == doctest::Approx(3 * kPi / 4).epsilon(1e-15));
    CHECK(se.coefficients[1] == doctest::Approx(0.5).epsilon(1e-13));

    CHECK(series_x(6, 2, 0.0, SeriesBranch::minus) ==
          doctest::Approx(kPi).epsilon(1e-15));  // gamma = 0 returns x0

    // numeric cross-check at small gamma
    for (int k : {1, 2, 3}) {
        const double g = 0.05;
        const double xs = series_x(6, k, g, SeriesBranch::minus);
        auto root = tangent_root_near(6, g, SeriesBranch::minus, xs, 0.1);
        REQUIRE(root.has_value());
        CHECK(std::fabs(xs - *root) < 1e-8);
    }
    CHECK_THROWS_AS(series_coefficients(5, 1, SeriesBranch::minus), InvalidArgument);
    CHECK_THROWS_AS(series_coefficients(6, 4, SeriesBranch::minus), InvalidArgument);
}

TEST_CASE("series truncation error stays O(gamma^8)") {
    // ratio |x_series - x_root| / gamma^8 recorded over gamma in [0.01, 0.1];
    // the bound below is an order-of-magnitude cap, not a tight constant.
    double worst_ratio = 0;
    for (int k : {1, 3}) {
        for (double g = 0.01; g <= 0.1 + 1e-12; g += 0.01) {
            const double xs = series_x(6, k, g, SeriesBranch::minus);
            auto root = tangent_root_near(6, g, SeriesBranch::minus, xs, 0.1);
            REQUIRE(root.has_value());
            worst_ratio = std::max(worst_ratio, std::fabs(xs - *root) / std::pow(g, 8));
        }
    }
    MESSAGE("series O(gamma^8) ratio bound: ", worst_ratio);
    CHECK(worst_ratio < 1e3);
}

TEST_CASE("lambda_from_alpha") {
    ChainParams p{4, 0.0, 1.0, 0.5};
    CHECK(lambda_from_alpha(p, cplx(0.0)) == doctest::Approx(2 * p.a - 2 * p.b));
    CHECK(lambda_from_alpha(p, cplx(kPi / 4, 0)) == doctest::Approx(-2 * p.b).epsilon(1e-12));
    CHECK(lambda_from_alpha(p, cplx(0.0, 0.3)) ==
          doctest::Approx(2 * std::cosh(0.6) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(lambda_from_alpha(p, cplx(0.4, 0.3)), NonRealValue);
}

TEST_CASE("alpha round trip through the spectrum") {
    testutil::Rng rng(71);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(2, 10);
        ChainParams p{n, rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (std::fabs(p.b) < 0.05 || std::fabs(p.a) < 0.05) continue;
        const Spectrum s = eigenvalues_bisection(p, 1e-12);
        for (int i = 0; i < n; ++i) {
            const double E = s.eigenvalues[i];
            if (i > 0 && std::fabs(E - s.eigenvalues[i - 1]) < 1e-6) continue;
            if (i + 1 < n && std::fabs(E - s.eigenvalues[i + 1]) < 1e-6) continue;
            const AuxQuantities q = aux_quantities(p, E);
            const double lam = lambda_from_alpha(p, q.alpha);
            CHECK(std::fabs((p.omega0 - lam) - E) <= 1e-9 * std::max(1.0, std::fabs(E)));
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("sweep endpoints for the six-site chain") {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(2.0 * i / 100);
    const std::vector<RootCurve> curves = sweep_curves(6, grid);
    REQUIRE(curves.size() == 6);

    // gamma = 0: intercepts k pi/(2(n+2)) + pi/4, two curves each
    std::vector<double> x0;
    for (const RootCurve& c : curves) x0.push_back(c.x_values.front());
    std::sort(x0.begin(), x0.end());
    for (int k = 1; k <= 3; ++k) {
        const double expect = k * kPi / 16 + kPi / 4;
        CHECK(std::fabs(x0[2 * (k - 1)] - expect) < 1e-8);
        CHECK(std::fabs(x0[2 * (k - 1) + 1] - expect) < 1e-8);
    }

    // gamma = 2: branches settle near k pi / (2(n+1))
    for (int j = 0; j < 6; ++j) {
        const double expect = (j + 1) * kPi / 14;
        CHECK(std::fabs(curves[j].x_values.back() - expect) < 0.02);
    }

    // every swept x is finite/real by construction; classes are admissible
    for (const RootCurve& c : curves)
        for (size_t i = 0; i < c.x_values.size(); ++i) {
            CHECK(std::isfinite(c.x_values[i]));
            if (c.gamma_grid[i] > 0) CHECK(std::isfinite(std::abs(c.alpha_values[i])));
        }
}

TEST_CASE("four-site chain: one imaginary-to-real crossover per branch, before gamma = 1") {
    std::vector<double> grid;
    for (int i = 0; i <= 300; ++i) grid.push_back(1e-3 + (1.5 - 1e-3) * i / 300);
    const std::vector<RootCurve> curves = sweep_curves(4, grid);
    for (const RootCurve& c : curves) {
        int transitions = 0;
        double gamma_cross = -1;
        for (size_t i = 1; i < c.alpha_class.size(); ++i) {
            const bool was_real = c.alpha_class[i - 1] == AlphaClass::real;
            const bool is_real = c.alpha_class[i] == AlphaClass::real;
            if (!was_real && is_real) {
                ++transitions;
                gamma_cross = c.gamma_grid[i];
            }
            CHECK(!(was_real && !is_real));  // never back to imaginary
        }
        CHECK(transitions == 1);
        CHECK(gamma_cross < 1.0);
    }
}

TEST_CASE("degeneracy crossings for the six-site chain") {
    std::vector<double> grid;
    grid.push_back(0.0);
    for (int i = 1; i <= 400; ++i) grid.push_back(2.0 * i / 400);
    const std::vector<RootCurve> curves = sweep_curves(6, grid);
    const std::vector<int> counts = degeneracy_crossings(curves);
    REQUIRE(counts.size() == 3);
    // descending pairs show 1, 2, 3 degenerate points
    CHECK(counts[2] == 1);
    CHECK(counts[1] == 2);
    CHECK(counts[0] == 3);
}

TEST_CASE("sweep input validation") {
    CHECK_THROWS_AS(sweep_curves(6, {}), InvalidArgument);
    CHECK_THROWS_AS(sweep_curves(6, {0.2, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(sweep_curves(6, {-0.1, 0.2}), InvalidArgument);
    CHECK_THROWS_AS(degeneracy_crossings({}), InvalidArgument);
}
