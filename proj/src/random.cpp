#include "gfusion/random.hpp"

#include <cmath>
#include <numbers>

namespace gfusion
{
namespace
{
// 53 random bits mapped to [0, 1); independent of the standard library's
// distribution implementations so sequences are portable.
double unit_interval(std::mt19937_64& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}
}  // namespace

double Rng::normal()
{
    // Box–Muller; the second variate is discarded.
    double u1 = unit_interval(engine_);
    while (u1 <= 0)
    {
        u1 = unit_interval(engine_);
    }
    double const u2 = unit_interval(engine_);
    return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * unit_interval(engine_);
}

int Rng::uniform_int(int lo, int hi)
{
    auto const span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

Complex Rng::complex_normal()
{
    double const re = normal();
    double const im = normal();
    return {re, im};
}

Vector Rng::gaussian_vector(int n)
{
    Vector v(n);
    for (int i = 0; i < n; ++i)
    {
        v(i) = complex_normal();
    }
    return v;
}

Vector Rng::unit_vector(int n)
{
    Vector v = gaussian_vector(n);
    while (v.norm() == 0)
    {
        v = gaussian_vector(n);
    }
    return v / v.norm();
}

Matrix Rng::gaussian_matrix(int rows, int cols)
{
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
    {
        for (int i = 0; i < rows; ++i)
        {
            m(i, j) = complex_normal();
        }
    }
    return m;
}

Matrix Rng::unitary(int n)
{
    Matrix const g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix const r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
    {
        double const mag = std::abs(r(j, j));
        if (mag > 0)
        {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

std::vector<Vector> probe_vectors(int n, int count, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<Vector> probes;
    probes.reserve(count);
    for (int i = 0; i < count; ++i)
    {
        probes.push_back(rng.unit_vector(n));
    }
    return probes;
}

}  // namespace gfusion
