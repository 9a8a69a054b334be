#include "gfusion/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "gfusion/error.hpp"
#include "gfusion/random.hpp"

namespace gfusion
{
namespace
{
int residue(long long value, int n)
{
    auto const r = value % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

void require_order(int n)
{
    if (n < 1)
    {
        fail(Errc::OutOfRange, "group order must be positive");
    }
}

void require_residue(int x, int n, char const* what)
{
    if (x < 0 || x >= n)
    {
        fail(Errc::OutOfRange, std::string(what) + " = " + std::to_string(x)
                                   + " is not a residue mod " + std::to_string(n));
    }
}

Matrix hermitian_part(Matrix const& m)
{
    return 0.5 * (m + m.adjoint());
}

std::vector<Member> full_space_members(Window const& window,
                                       std::vector<Matrix> thetas)
{
    int const n = static_cast<int>(thetas.front().rows());
    auto const space = Subspace::full(n);
    std::vector<Member> members;
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        members.push_back({window.k_min + static_cast<int>(i), space,
                           std::move(thetas[i])});
    }
    return members;
}

// Random reflection V·diag(±1)·V*, with at least one −1 when d > 1.
Matrix random_reflection(Rng& rng, int d)
{
    Matrix const v = rng.unitary(d);
    Vector signs(d);
    for (int i = 0; i < d; ++i)
    {
        signs(i) = rng.uniform_int(0, 1) == 0 ? 1.0 : -1.0;
    }
    if (d > 1)
    {
        signs(rng.uniform_int(0, d - 1)) = -1.0;
    }
    return hermitian_part(v * signs.asDiagonal() * v.adjoint());
}
}  // namespace

Matrix dirac_shift(int n, int x)
{
    require_order(n);
    require_residue(x, n, "shift");
    Matrix p = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j)
    {
        p((j + x) % n, j) = 1;
    }
    return p;
}

//---------------------------------------------------------------------------//
CyclicGroupConvolution::CyclicGroupConvolution(
    int order, std::vector<std::pair<int, Complex>> support)
    : order_(order), support_(std::move(support))
{
    require_order(order_);
    std::set<int> seen;
    for (auto const& [element, weight] : support_)
    {
        require_residue(element, order_, "support element");
        if (!seen.insert(element).second)
        {
            fail(Errc::OutOfRange,
                 "support element " + std::to_string(element) + " repeated");
        }
    }
}

Matrix CyclicGroupConvolution::matrix() const
{
    Matrix m = Matrix::Zero(order_, order_);
    for (auto const& [element, weight] : support_)
    {
        m += weight * dirac_shift(order_, element);
    }
    return m;
}

//---------------------------------------------------------------------------//
FrameFamily example_51_family(ShiftFamilyParams const& p)
{
    require_order(p.n);
    require_residue(p.base_element, p.n, "base element");
    if (p.half_width < 0)
    {
        fail(Errc::InvalidRange, "half-width must be non-negative");
    }
    if (!(p.decay > 0 && p.decay < 1))
    {
        fail(Errc::InvalidRange, "decay must lie in (0, 1)");
    }
    int const order = p.n / std::gcd(p.n, p.base_element);
    int const needed = p.one_sided ? p.half_width : 2 * p.half_width;
    if (!p.allow_repeated_shifts && order <= needed)
    {
        fail(Errc::SubgroupTooSmall,
             "element " + std::to_string(p.base_element) + " has order "
                 + std::to_string(order) + " in Z_" + std::to_string(p.n)
                 + ", need more than " + std::to_string(needed));
    }

    auto const window = p.one_sided ? Window::truncated(0, p.half_width)
                                    : Window::truncated(-p.half_width, p.half_width);
    std::vector<Matrix> thetas;
    for (int k = window.k_min; k <= window.k_max; ++k)
    {
        double const weight = std::pow(p.decay, std::abs(k));
        thetas.emplace_back(
            weight * dirac_shift(p.n, residue(static_cast<long long>(k) * p.base_element, p.n)));
    }
    return FrameFamily(window, full_space_members(window, std::move(thetas)));
}

FrameFamily example_53_family(int n, int half_width, int x0,
                              std::optional<Matrix> theta0)
{
    require_order(n);
    require_residue(x0, n, "x0");
    if (half_width < 0)
    {
        fail(Errc::OutOfRange, "half-width must be non-negative");
    }
    Matrix const base = theta0.value_or(Matrix::Identity(n, n));
    if (base.rows() != n || base.cols() != n)
    {
        fail(Errc::DimMismatch, "Θ_0 must be n × n");
    }
    auto const window = Window::truncated(-half_width, half_width);
    std::vector<Matrix> thetas;
    for (int k = -half_width; k <= half_width; ++k)
    {
        thetas.emplace_back(
            dirac_shift(n, residue(static_cast<long long>(k) * x0, n)) * base);
    }
    return FrameFamily(window, full_space_members(window, std::move(thetas)));
}

FrameFamily random_self_adjoint_family(SelfAdjointFamilyParams const& p)
{
    if (!(p.lo > 0 && p.lo <= p.hi))
    {
        fail(Errc::InvalidRange, "spectrum range must satisfy 0 < lo ≤ hi");
    }
    if (p.n < 1)
    {
        fail(Errc::InvalidRange, "dimension must be positive");
    }
    Rng rng(p.seed);
    std::vector<Member> members;
    for (int k = p.window.k_min; k <= p.window.k_max; ++k)
    {
        int const d = p.full_space ? p.n : rng.uniform_int(1, p.n);
        Matrix const basis = p.full_space ? Matrix(Matrix::Identity(p.n, p.n))
                                          : Matrix(rng.unitary(p.n).leftCols(d));
        Matrix const w = rng.unitary(d);
        Vector spectrum(d);
        for (int i = 0; i < d; ++i)
        {
            spectrum(i) = p.lo == p.hi ? p.lo : rng.uniform(p.lo, p.hi);
        }
        Matrix const local = w * spectrum.asDiagonal() * w.adjoint();
        members.push_back({k, Subspace::from_basis(basis),
                           hermitian_part(basis * local * basis.adjoint())});
    }
    return FrameFamily(p.window, std::move(members));
}

FrameFamily reflection_cyclic_family(ReflectionFamilyParams const& p)
{
    if (p.period < 2 || p.period % 2 != 0)
    {
        fail(Errc::InvalidRange, "period must be even and at least 2");
    }
    if (p.subspace_dim < 1 || p.subspace_dim > p.n)
    {
        fail(Errc::InvalidRange, "subspace dimension must lie in [1, n]");
    }
    if (!(p.lo > 0 && p.lo <= p.hi))
    {
        fail(Errc::InvalidRange, "spectrum range must satisfy 0 < lo ≤ hi");
    }
    Rng rng(p.seed);
    int const d = p.subspace_dim;
    Matrix const q = rng.unitary(p.n).leftCols(d);
    Matrix const w = rng.unitary(d);
    Eigen::VectorXd spectrum(d);
    for (int i = 0; i < d; ++i)
    {
        spectrum(i) = rng.uniform(p.lo, p.hi);
    }
    Matrix const root = w * spectrum.cwiseSqrt().cast<Complex>().asDiagonal() * w.adjoint();
    Matrix const j = random_reflection(rng, d);

    Matrix const h0 = w * spectrum.cast<Complex>().asDiagonal() * w.adjoint();
    Matrix const h1 = root * j * root;
    Matrix const even = hermitian_part(q * h0 * q.adjoint());
    Matrix const odd = hermitian_part(q * h1 * q.adjoint());

    auto const window = Window::cyclic(p.period);
    auto const space = Subspace::from_basis(q);
    std::vector<Member> members;
    for (int k = 0; k < p.period; ++k)
    {
        members.push_back({k, space, k % 2 == 0 ? even : odd});
    }
    return FrameFamily(window, std::move(members));
}

FrameFamily unitary_power_family(int n, int period, std::uint64_t seed, double scale)
{
    if (n < 1 || period < 1)
    {
        fail(Errc::InvalidRange, "dimension and period must be positive");
    }
    Rng rng(seed);
    Matrix const v = rng.unitary(n);
    std::vector<int> exponents(n);
    for (auto& e : exponents)
    {
        e = rng.uniform_int(0, period - 1);
    }
    auto const window = Window::cyclic(period);
    std::vector<Matrix> thetas;
    for (int k = 0; k < period; ++k)
    {
        Vector phases(n);
        for (int i = 0; i < n; ++i)
        {
            double const angle = 2 * std::numbers::pi * residue(
                                     static_cast<long long>(k) * exponents[i], period)
                                 / period;
            phases(i) = std::polar(scale, angle);
        }
        thetas.emplace_back(v * phases.asDiagonal() * v.adjoint());
    }
    return FrameFamily(window, full_space_members(window, std::move(thetas)));
}

FrameFamily cyclic_shift_family(int n, int period, double scale)
{
    require_order(n);
    if (period < 1)
    {
        fail(Errc::InvalidRange, "period must be positive");
    }
    auto const window = Window::cyclic(period);
    std::vector<Matrix> thetas;
    for (int k = 0; k < period; ++k)
    {
        thetas.emplace_back(scale * dirac_shift(n, k % n));
    }
    return FrameFamily(window, full_space_members(window, std::move(thetas)));
}

FrameFamily scalar_geometric_family(Matrix const& base, Complex x, Window window)
{
    std::vector<Matrix> thetas;
    for (int k = window.k_min; k <= window.k_max; ++k)
    {
        thetas.emplace_back(std::pow(x, k) * base);
    }
    return FrameFamily(window, full_space_members(window, std::move(thetas)));
}

FrameFamily constant_family(Subspace const& subspace, Matrix const& theta, Window window)
{
    std::vector<Member> members;
    for (int k = window.k_min; k <= window.k_max; ++k)
    {
        members.push_back({k, subspace, theta});
    }
    return FrameFamily(window, std::move(members));
}

FrameFamily scaled_family(FrameFamily const& family, Complex factor)
{
    std::vector<Matrix> thetas;
    for (auto const& m : family.members())
    {
        thetas.emplace_back(factor * m.theta);
    }
    return family.with_operators(std::move(thetas));
}

//---------------------------------------------------------------------------//
ScanFixture identity_scan_fixture(int n, int half_width)
{
    auto const window = Window::truncated(-half_width, half_width);
    return {constant_family(Subspace::full(n), Matrix::Identity(n, n), window),
            Matrix::Identity(n, n)};
}

ScanFixture reflection_scan_fixture(int n, int half_width, std::uint64_t seed)
{
    Rng rng(seed);
    Matrix const h = random_reflection(rng, n);
    auto const window = Window::truncated(-half_width, half_width);
    std::vector<Matrix> thetas;
    for (int k = -half_width; k <= half_width; ++k)
    {
        thetas.emplace_back(k % 2 == 0 ? Matrix(Matrix::Identity(n, n)) : h);
    }
    return {FrameFamily(window, full_space_members(window, std::move(thetas))), h};
}

ScanFixture example_53_scan_fixture(int n, int half_width, int x0)
{
    return {example_53_family(n, half_width, x0), dirac_shift(n, x0)};
}

}  // namespace gfusion
