#pragma once

#include <cstddef>
#include <vector>

#include "rankfd/matrix.hpp"

namespace rankfd::num {

/// Eigenvalues of a symmetric matrix, sorted descending. Cyclic Jacobi;
/// input must satisfy ||M - M'||_inf <= 1e-10 * ||M||_inf or a
/// rankfd::domain_error is raised.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Thin singular value decomposition m = u * diag(sigma) * v' with
/// sigma sorted descending. One-sided Jacobi; suitable for the small
/// dense matrices used here.
struct Svd {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
};
Svd singular_value_decomposition(const Matrix& m);

/// Relative cutoff under which singular values count as zero:
/// max(rows, cols) * eps * sigma_max.
double singular_value_cutoff(const Matrix& m, const std::vector<double>& sigma);

/// Numerical rank by SVD cutoff.
std::size_t matrix_rank(const Matrix& m);

} // namespace rankfd::num
