#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gfusion
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

//! Relative tolerance for rank and nullspace decisions.
inline constexpr double kDefaultTol = 1e-9;

bool all_finite(Matrix const& m);
//! Throws NonFinite naming `what` when any entry is NaN or infinite.
void require_finite(Matrix const& m, std::string_view what);

//---------------------------------------------------------------------------//
/*!
 * Eigenvalues of a Hermitian matrix in ascending order.
 *
 * The input is accepted when ‖m − m*‖_F ≤ tol·‖m‖_F; the decomposition runs
 * on the symmetrized part and every eigenpair is checked against it before
 * returning.
 */
std::vector<double> hermitian_eigenvalues(Matrix const& m,
                                          double tol = kDefaultTol);

/*!
 * Minimum-norm X minimizing Σ_k ‖X·lhs_k − rhs_k‖_F².
 *
 * All lhs blocks share a row count n (the column count of X); rhs_k has the
 * same column count as lhs_k. Singular values of the stacked lhs below
 * tol·σ_max are treated as zero.
 */
Matrix least_squares_solve(std::span<Matrix const> lhs_blocks,
                           std::span<Matrix const> rhs_blocks,
                           double tol = kDefaultTol);

//! Orthonormal basis of {v : ‖m·v‖ ≤ tol·‖m‖·‖v‖}.
std::vector<Vector> nullspace_basis(Matrix const& m, double tol = kDefaultTol);

//! Columns of the result form an orthonormal basis of the column space.
Matrix range_basis(Matrix const& m, double tol = kDefaultTol);

//! Number of singular values above tol·σ_max.
std::size_t matrix_rank(Matrix const& m, double tol = kDefaultTol);

//! Singular values in descending order.
std::vector<double> singular_values(Matrix const& m);

//! Largest singular value.
double operator_norm(Matrix const& m);

//! Stacks the entries of m column by column.
Vector vectorize(Matrix const& m);

}  // namespace gfusion
