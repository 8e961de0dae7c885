#pragma once

// Internal dense kernels shared by the oracle, the direct determinant and
// inverse iteration. Row-major storage, sizes small enough that O(n^3) with
// partial pivoting is the right tool.

#include <vector>

namespace nnchain::detail {

/// In-place LU with partial pivoting. Returns the permutation sign and the
/// pivot list; a zero pivot is kept (the caller decides what singular means).
struct LuFactors {
    std::vector<double> lu;  // packed L\U
    std::vector<int> piv;
    int n = 0;
    int sign = 1;
    bool singular = false;
};

LuFactors lu_factor(std::vector<double> a, int n);
void lu_solve_inplace(const LuFactors& f, std::vector<double>& x);
double lu_determinant(const LuFactors& f);

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi sweeps; stops when
/// the off-diagonal Frobenius norm is below tol_rel times the Frobenius norm
/// of the input. Returns unsorted diagonal.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n, double tol_rel,
                                       int max_sweeps = 64);

} // namespace nnchain::detail
