#include "gfusion/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfusion/error.hpp"

namespace gfusion
{

bool all_finite(Matrix const& m)
{
    return m.allFinite();
}

void require_finite(Matrix const& m, std::string_view what)
{
    if (!all_finite(m))
    {
        fail(Errc::NonFinite, std::string(what) + " has NaN or infinite entries");
    }
}

std::vector<double> hermitian_eigenvalues(Matrix const& m, double tol)
{
    require_finite(m, "matrix");
    if (m.rows() != m.cols())
    {
        fail(Errc::NotHermitian, "matrix is not square");
    }
    double const scale = m.norm();
    double const asym = (m - m.adjoint()).norm();
    if (asym > tol * scale)
    {
        fail(Errc::NotHermitian,
             "‖m − m*‖_F = " + std::to_string(asym) + " exceeds tolerance");
    }
    if (m.size() == 0)
    {
        return {};
    }

    Matrix const sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
    {
        fail(Errc::NotHermitian, "eigen-decomposition did not converge");
    }
    auto const& values = solver.eigenvalues();
    auto const& vectors = solver.eigenvectors();
    double const op_scale = std::max(values.cwiseAbs().maxCoeff(), 0.0);
    for (Eigen::Index i = 0; i < values.size(); ++i)
    {
        double const r = (sym * vectors.col(i) - values(i) * vectors.col(i)).norm();
        if (r > 1e-10 * std::max(op_scale, 1e-300) && r > 1e-300)
        {
            fail(Errc::NotHermitian, "eigenpair residual check failed");
        }
    }
    return {values.data(), values.data() + values.size()};
}

Matrix least_squares_solve(std::span<Matrix const> lhs_blocks,
                           std::span<Matrix const> rhs_blocks,
                           double tol)
{
    if (lhs_blocks.empty() || lhs_blocks.size() != rhs_blocks.size())
    {
        fail(Errc::ShapeMismatch, "need matching, non-empty block lists");
    }
    Eigen::Index const n = lhs_blocks.front().rows();
    Eigen::Index const p = rhs_blocks.front().rows();
    Eigen::Index total = 0;
    for (std::size_t i = 0; i < lhs_blocks.size(); ++i)
    {
        auto const& l = lhs_blocks[i];
        auto const& r = rhs_blocks[i];
        require_finite(l, "lhs block");
        require_finite(r, "rhs block");
        if (l.rows() != n || r.rows() != p || r.cols() != l.cols())
        {
            fail(Errc::ShapeMismatch,
                 "block " + std::to_string(i) + " is not conformable");
        }
        total += l.cols();
    }

    Matrix lhs(n, total);
    Matrix rhs(p, total);
    Eigen::Index offset = 0;
    for (std::size_t i = 0; i < lhs_blocks.size(); ++i)
    {
        auto const cols = lhs_blocks[i].cols();
        lhs.middleCols(offset, cols) = lhs_blocks[i];
        rhs.middleCols(offset, cols) = rhs_blocks[i];
        offset += cols;
    }

    // X·L = R  ⇒  X = R·L⁺ = R·V·Σ⁺·U*
    Eigen::BDCSVD<Matrix> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    auto const& sigma = svd.singularValues();
    Matrix result = Matrix::Zero(p, n);
    if (sigma.size() == 0 || sigma(0) == 0)
    {
        return result;
    }
    double const cutoff = tol * sigma(0);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff)
    {
        ++rank;
    }
    Matrix const rv = rhs * svd.matrixV().leftCols(rank);
    Vector inv_sigma(rank);
    for (Eigen::Index i = 0; i < rank; ++i)
    {
        inv_sigma(i) = 1.0 / sigma(i);
    }
    result = rv * inv_sigma.asDiagonal() * svd.matrixU().leftCols(rank).adjoint();
    return result;
}

std::vector<Vector> nullspace_basis(Matrix const& m, double tol)
{
    require_finite(m, "matrix");
    std::vector<Vector> basis;
    if (m.cols() == 0)
    {
        return basis;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    auto const& sigma = svd.singularValues();
    double const largest = sigma.size() > 0 ? sigma(0) : 0.0;
    double const cutoff = tol * largest;
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff)
    {
        ++rank;
    }
    Matrix const& v = svd.matrixV();
    for (Eigen::Index j = rank; j < m.cols(); ++j)
    {
        basis.emplace_back(v.col(j));
    }
    return basis;
}

Matrix range_basis(Matrix const& m, double tol)
{
    require_finite(m, "matrix");
    if (m.cols() == 0 || m.rows() == 0)
    {
        return Matrix(m.rows(), 0);
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    auto const& sigma = svd.singularValues();
    double const cutoff = tol * sigma(0);
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff)
    {
        ++rank;
    }
    return svd.matrixU().leftCols(rank);
}

std::vector<double> singular_values(Matrix const& m)
{
    require_finite(m, "matrix");
    if (m.size() == 0)
    {
        return {};
    }
    Eigen::BDCSVD<Matrix> svd(m);
    auto const& sigma = svd.singularValues();
    return {sigma.data(), sigma.data() + sigma.size()};
}

std::size_t matrix_rank(Matrix const& m, double tol)
{
    auto const sigma = singular_values(m);
    if (sigma.empty() || sigma.front() == 0)
    {
        return 0;
    }
    double const cutoff = tol * sigma.front();
    return static_cast<std::size_t>(
        std::count_if(sigma.begin(), sigma.end(),
                      [cutoff](double s) { return s > cutoff; }));
}

double operator_norm(Matrix const& m)
{
    auto const sigma = singular_values(m);
    return sigma.empty() ? 0.0 : sigma.front();
}

Vector vectorize(Matrix const& m)
{
    return m.reshaped();
}

}  // namespace gfusion
