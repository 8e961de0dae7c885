#include "dense.hpp"

#include <cmath>
#include <cstdlib>

#include "nnchain/errors.hpp"

namespace nnchain::detail {

LuFactors lu_factor(std::vector<double> a, int n) {
    LuFactors f;
    f.lu = std::move(a);
    f.n = n;
    f.piv.resize(n);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(f.lu[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::fabs(f.lu[i * n + k]);
            if (v > best) { best = v; p = i; }
        }
        f.piv[k] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu[k * n + j], f.lu[p * n + j]);
            f.sign = -f.sign;
        }
        double pivot = f.lu[k * n + k];
        if (pivot == 0.0) { f.singular = true; continue; }
        for (int i = k + 1; i < n; ++i) {
            double m = f.lu[i * n + k] / pivot;
            f.lu[i * n + k] = m;
            for (int j = k + 1; j < n; ++j) f.lu[i * n + j] -= m * f.lu[k * n + j];
        }
    }
    return f;
}

void lu_solve_inplace(const LuFactors& f, std::vector<double>& x) {
    const int n = f.n;
    for (int k = 0; k < n; ++k) {
        if (f.piv[k] != k) std::swap(x[k], x[f.piv[k]]);
        for (int i = k + 1; i < n; ++i) x[i] -= f.lu[i * n + k] * x[k];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu[i * n + j] * x[j];
        x[i] /= f.lu[i * n + i];
    }
}

double lu_determinant(const LuFactors& f) {
    if (f.singular) return 0.0;
    double det = f.sign;
    for (int k = 0; k < f.n; ++k) det *= f.lu[k * f.n + k];
    return det;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double tol_rel,
                                       int max_sweeps) {
    double norm2 = 0;
    for (int i = 0; i < n * n; ++i) norm2 += a[i] * a[i];
    const double target2 = tol_rel * tol_rel * norm2;

    auto off2 = [&]() {
        double s = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2 * a[p * n + q] * a[p * n + q];
        return s;
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off2() <= target2) {
            std::vector<double> d(n);
            for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
            return d;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (apq == 0.0) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = (aqq - app) / (2 * apq);
                double t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                double c = 1.0 / std::sqrt(t * t + 1);
                double s = t * c;
                double tau = s / (1 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = a[p * n + i] = aip - s * (aiq + tau * aip);
                    a[i * n + q] = a[q * n + i] = aiq + s * (aip - tau * aiq);
                }
            }
        }
    }
    if (off2() > target2)
        throw NoConvergence("jacobi_eigenvalues: off-diagonal norm not reduced below tolerance");
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = a[i * n + i];
    return d;
}

} // namespace nnchain::detail
