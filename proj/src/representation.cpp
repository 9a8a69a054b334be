#include "gfusion/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gfusion/error.hpp"

namespace gfusion
{
namespace
{
// Residual normalization switches to absolute below this target norm.
constexpr double kZeroNormCutoff = 1e-14;
// Isometry and tightness checks for scan fixtures.
constexpr double kGeneratorTol = 1e-9;

double pair_residual(Matrix const& T, Matrix const& from, Matrix const& to)
{
    double const diff = (T * from - to).norm();
    double const norm = to.norm();
    return norm < kZeroNormCutoff ? diff : diff / norm;
}
}  // namespace

double representation_residual(FrameFamily const& family, Matrix const& T)
{
    if (T.rows() != family.dim() || T.cols() != family.dim())
    {
        fail(Errc::DimMismatch, "representer must be "
                                    + std::to_string(family.dim()) + " × "
                                    + std::to_string(family.dim()));
    }
    double worst = 0;
    for (auto const& [from, to] : family.window().successor_pairs())
    {
        worst = std::max(worst,
                         pair_residual(T, family[from].theta, family[to].theta));
    }
    return worst;
}

bool verify_representation(FrameFamily const& family, Matrix const& T, double tol)
{
    return representation_residual(family, T) <= tol;
}

Representer solve_representer(FrameFamily const& family)
{
    if (family.size() < 2)
    {
        fail(Errc::TooFewMembers, "need at least two members to represent");
    }
    // T = Q·X·Q* with X acting on coordinates of span{M_k}; since every Θ_k
    // maps into the span, ‖T·Θ_k − Θ_{k+1}‖ = ‖X·Q*Θ_k − Q*Θ_{k+1}‖.
    Matrix const q = span_basis(family);
    std::vector<Matrix> lhs;
    std::vector<Matrix> rhs;
    for (auto const& [from, to] : family.window().successor_pairs())
    {
        lhs.emplace_back(q.adjoint() * family[from].theta);
        rhs.emplace_back(q.adjoint() * family[to].theta);
    }
    Matrix const x = least_squares_solve(lhs, rhs);

    Representer rep;
    rep.T = q * x * q.adjoint();
    rep.residual = representation_residual(family, rep.T);
    auto const sigma = singular_values(x);
    rep.op_norm = sigma.empty() ? 0.0 : sigma.front();
    rep.min_singular = sigma.empty() ? 0.0 : sigma.back();
    return rep;
}

//---------------------------------------------------------------------------//
SandwichReport norm_sandwich_check(FrameFamily const& family,
                                   Representer const& rep,
                                   double tol,
                                   CheckMode mode)
{
    SandwichReport report;
    report.bounds = frame_bounds_on_span(family);
    report.op_norm = rep.op_norm;
    report.upper = report.bounds.lower > 0
                       ? std::sqrt(report.bounds.upper / report.bounds.lower)
                       : std::numeric_limits<double>::infinity();
    report.holds = report.op_norm >= report.lower - tol
                   && report.op_norm <= report.upper + tol;

    auto const structure
        = validate_structure(family, {.self_adjoint = true, .onto_subspace = true});
    if (!report.bounds.is_frame())
    {
        report.failed_hypothesis = "frame";
    }
    else if (rep.residual > tol)
    {
        report.failed_hypothesis = "representation";
    }
    else if (auto failure = structure.first_failure())
    {
        report.failed_hypothesis = *failure;
    }
    else if (family.semantics() != Semantics::Cyclic)
    {
        report.failed_hypothesis = "cyclic-semantics";
    }

    bool const audit = mode == CheckMode::Audit
                       || family.semantics() == Semantics::Truncated;
    if (report.failed_hypothesis && !audit)
    {
        fail(Errc::HypothesisViolation, *report.failed_hypothesis);
    }
    report.asserted = !report.failed_hypothesis.has_value();
    return report;
}

//---------------------------------------------------------------------------//
ShiftInvarianceReport kernel_shift_invariance(FrameFamily const& family,
                                              Representer const& rep,
                                              double tol)
{
    if (family.semantics() != Semantics::Cyclic)
    {
        fail(Errc::SemanticsUnsupported,
             "right shift is not a bijection of a truncated window");
    }
    if (rep.residual > tol)
    {
        fail(Errc::NotRepresentable,
             "representer residual " + std::to_string(rep.residual)
                 + " exceeds tolerance");
    }

    auto const n = family.dim();
    auto const count = static_cast<Eigen::Index>(family.size());
    std::vector<Eigen::Index> offsets;
    Eigen::Index total = 0;
    for (auto const& m : family.members())
    {
        offsets.push_back(total);
        total += m.subspace.dim();
    }

    // U restricted to ℋ in block coordinates f_k = basis_k·c_k.
    Matrix u_blocks(n, total);
    for (Eigen::Index i = 0; i < count; ++i)
    {
        auto const& m = family[static_cast<std::size_t>(i)];
        u_blocks.middleCols(offsets[i], m.subspace.dim())
            = m.theta.adjoint() * m.subspace.basis();
    }
    auto const coords = nullspace_basis(u_blocks);

    ShiftInvarianceReport report;
    report.kernel_dim = coords.size();
    if (coords.empty())
    {
        return report;
    }

    Matrix kernel(n * count, static_cast<Eigen::Index>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j)
    {
        Vector v(n * count);
        for (Eigen::Index i = 0; i < count; ++i)
        {
            auto const& m = family[static_cast<std::size_t>(i)];
            v.segment(i * n, n)
                = m.subspace.basis() * coords[j].segment(offsets[i], m.subspace.dim());
        }
        kernel.col(static_cast<Eigen::Index>(j)) = v;
    }

    for (Eigen::Index j = 0; j < kernel.cols(); ++j)
    {
        Vector const v = kernel.col(j);
        Vector shifted(v.size());
        for (Eigen::Index i = 0; i < count; ++i)
        {
            shifted.segment(i * n, n) = v.segment(((i + 1) % count) * n, n);
        }
        Vector const outside = shifted - kernel * (kernel.adjoint() * shifted);
        report.max_violation = std::max(report.max_violation,
                                        outside.norm() / v.norm());
    }
    return report;
}

//---------------------------------------------------------------------------//
ScanReport invertibility_obstruction_scan(FamilyGenerator const& generator,
                                          std::span<int const> half_widths)
{
    if (half_widths.size() < 2)
    {
        fail(Errc::Usage, "a growth scan needs at least two window sizes");
    }

    ScanReport report;
    for (int const half_width : half_widths)
    {
        if (half_width < 0)
        {
            fail(Errc::Usage, "half-width must be non-negative");
        }
        ScanFixture const fixture = generator(half_width);
        auto const& family = fixture.family;
        std::string const where = "K=" + std::to_string(half_width);

        Matrix const q = span_basis(family);
        Matrix const& t = fixture.candidate;
        if (t.rows() != family.dim() || t.cols() != family.dim())
        {
            fail(Errc::GeneratorViolation, where + ": candidate has wrong shape");
        }
        Matrix const image = t * q;
        bool const stays_in_span
            = (image - q * (q.adjoint() * image)).norm()
              <= kGeneratorTol * std::max(image.norm(), 1.0);
        auto const sigma = singular_values(q.adjoint() * image);
        bool const isometric
            = stays_in_span && !sigma.empty()
              && std::abs(sigma.front() - 1) <= kGeneratorTol
              && std::abs(sigma.back() - 1) <= kGeneratorTol;
        if (!isometric)
        {
            fail(Errc::GeneratorViolation,
                 where + ": candidate is not an invertible isometry on the span");
        }
        if (family.size() >= 2
            && representation_residual(family, t) > kGeneratorTol)
        {
            fail(Errc::GeneratorViolation,
                 where + ": candidate does not represent the family");
        }
        auto const bounds = frame_bounds_on_span(family);
        if (!bounds.is_frame()
            || (bounds.upper - bounds.lower) / bounds.upper > kGeneratorTol)
        {
            fail(Errc::GeneratorViolation, where + ": family is not tight");
        }

        Matrix const& theta0 = family.at_index(0).theta;
        double const term_bound
            = hermitian_eigenvalues(theta0.adjoint() * theta0).back();

        ScanRow row;
        row.half_width = half_width;
        row.members = static_cast<int>(family.size());
        row.upper = bounds.upper;
        row.predicted = row.members * term_bound;
        row.rel_error = std::abs(row.upper - row.predicted) / row.predicted;
        report.rows.push_back(row);
    }

    auto const& first = report.rows.front();
    report.ratios_within_tolerance = true;
    for (auto& row : report.rows)
    {
        row.ratio = row.upper / first.upper;
        row.expected_ratio = static_cast<double>(row.members) / first.members;
        double const deviation = std::abs(row.ratio / row.expected_ratio - 1);
        report.max_ratio_deviation = std::max(report.max_ratio_deviation, deviation);
        report.max_rel_error = std::max(report.max_rel_error, row.rel_error);
        report.ratios_within_tolerance
            = report.ratios_within_tolerance && deviation <= kGrowthTol;
    }

    // Least-squares slope of log B against log(window size).
    double mean_x = 0;
    double mean_y = 0;
    for (auto const& row : report.rows)
    {
        mean_x += std::log(static_cast<double>(row.members));
        mean_y += std::log(row.upper);
    }
    auto const count = static_cast<double>(report.rows.size());
    mean_x /= count;
    mean_y /= count;
    double sxx = 0;
    double sxy = 0;
    for (auto const& row : report.rows)
    {
        double const dx = std::log(static_cast<double>(row.members)) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(row.upper) - mean_y);
    }
    report.slope = sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
    report.slope_within_tolerance = std::abs(report.slope - 1) <= kGrowthTol;
    return report;
}

}  // namespace gfusion
