#include "gfusion/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gfusion/error.hpp"

namespace gfusion
{
namespace
{
// Slack for the perturbation inequality, relative to the magnitudes involved.
constexpr double kConditionSlack = 1e-12;

void require_conformable(FrameFamily const& a, FrameFamily const& b)
{
    if (a.dim() != b.dim() || a.size() != b.size()
        || !(a.window() == b.window()))
    {
        fail(Errc::ShapeMismatch, "families differ in dimension or window");
    }
}

struct SideNorms
{
    double difference = 0;  // ‖Σc(Θ − Θ̂)f‖
    double base = 0;        // ‖ΣcΘf‖
    double perturbed = 0;   // ‖ΣcΘ̂f‖
};

SideNorms side_norms(FrameFamily const& base,
                     FrameFamily const& perturbed,
                     std::span<Complex const> coefficients,
                     Vector const& f)
{
    if (coefficients.size() != base.size() || f.size() != base.dim())
    {
        fail(Errc::ShapeMismatch, "probe does not match the family");
    }
    Vector diff = Vector::Zero(base.dim());
    Vector lhs_base = Vector::Zero(base.dim());
    Vector lhs_perturbed = Vector::Zero(base.dim());
    for (std::size_t i = 0; i < coefficients.size(); ++i)
    {
        Complex const c = coefficients[i];
        if (c == Complex(0))
        {
            continue;
        }
        Vector const a = base[i].theta * f;
        Vector const b = perturbed[i].theta * f;
        diff += c * ((base[i].theta - perturbed[i].theta) * f);
        lhs_base += c * a;
        lhs_perturbed += c * b;
    }
    return {diff.norm(), lhs_base.norm(), lhs_perturbed.norm()};
}

bool violates(SideNorms const& s, PerturbationParams const& p, double& rhs)
{
    rhs = p.alpha() * s.base + p.beta() * s.perturbed;
    double const slack = kConditionSlack * (s.base + s.perturbed + s.difference);
    return s.difference > rhs + slack;
}
}  // namespace

PerturbationParams::PerturbationParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta)
{
    if (!(alpha >= 0 && alpha < 1 && beta >= 0 && beta < 1))
    {
        fail(Errc::InvalidParams, "α and β must lie in [0, 1)");
    }
}

ConditionSides evaluate_condition(FrameFamily const& base,
                                  FrameFamily const& perturbed,
                                  PerturbationParams const& params,
                                  std::span<Complex const> coefficients,
                                  Vector const& f)
{
    require_conformable(base, perturbed);
    auto const s = side_norms(base, perturbed, coefficients, f);
    return {s.difference, params.alpha() * s.base + params.beta() * s.perturbed};
}

ConditionResult check_condition(FrameFamily const& base,
                                FrameFamily const& perturbed,
                                PerturbationParams const& params,
                                int samples,
                                std::uint64_t seed)
{
    require_conformable(base, perturbed);
    if (samples < 1)
    {
        fail(Errc::InvalidParams, "need at least one sample");
    }
    ConditionResult result;
    result.params = params;
    Rng rng(seed);
    auto const count = base.size();
    int const n = base.dim();

    auto probe = [&](std::vector<Complex> c, Vector f) {
        ++result.probes_evaluated;
        auto const s = side_norms(base, perturbed, c, f);
        double rhs = 0;
        bool const violated = violates(s, params, rhs);
        if (result.probes_evaluated == 1 || s.difference - rhs > result.max_excess)
        {
            result.max_excess = s.difference - rhs;
        }
        if (violated)
        {
            result.verdict = ConditionVerdict::ViolatedWitness;
            result.witness = ConditionWitness{std::move(c), std::move(f),
                                              s.difference, rhs};
            return true;
        }
        return false;
    };

    // Kronecker-delta sequences: the structured probes behind the bounds.
    for (std::size_t i = 0; i < count; ++i)
    {
        for (int s = 0; s < samples; ++s)
        {
            std::vector<Complex> c(count, Complex(0));
            c[i] = 1;
            if (probe(std::move(c), rng.unit_vector(n)))
            {
                return result;
            }
        }
    }

    std::vector<std::size_t> order(count);
    for (int s = 0; s < samples; ++s)
    {
        int const support = rng.uniform_int(1, static_cast<int>(count));
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (int j = 0; j < support; ++j)
        {
            auto const pick = static_cast<std::size_t>(
                rng.uniform_int(j, static_cast<int>(count) - 1));
            std::swap(order[static_cast<std::size_t>(j)], order[pick]);
        }
        std::vector<Complex> c(count, Complex(0));
        for (int j = 0; j < support; ++j)
        {
            c[order[static_cast<std::size_t>(j)]] = rng.complex_normal();
        }
        if (probe(std::move(c), rng.unit_vector(n)))
        {
            return result;
        }
    }
    return result;
}

FrameBounds perturbed_bounds(PerturbationParams const& params,
                             FrameBounds const& base)
{
    if (!(base.lower > 0) || base.upper < base.lower)
    {
        fail(Errc::InvalidParams, "base bounds must satisfy 0 < A ≤ B");
    }
    double const a = params.alpha();
    double const b = params.beta();
    double const shrink = (1 - a) / (1 + b);
    double const grow = (1 + a) / (1 - b);
    return {shrink * shrink * base.lower, grow * grow * base.upper};
}

PerturbationReport verify_perturbed_frame(FrameFamily const& base,
                                          FrameFamily const& perturbed,
                                          ConditionResult const& condition,
                                          double tol)
{
    require_conformable(base, perturbed);
    if (condition.verdict != ConditionVerdict::PassedSampled)
    {
        fail(Errc::ConditionNotEstablished,
             "perturbation condition was violated by a sampled probe");
    }
    PerturbationReport report;
    report.params = condition.params;
    report.condition_verdict = condition.verdict;
    report.theoretical_bounds
        = perturbed_bounds(condition.params, frame_bounds(base));
    report.computed_bounds = frame_bounds(perturbed);
    report.lower_holds
        = report.theoretical_bounds.lower <= report.computed_bounds.lower + tol;
    report.upper_holds
        = report.computed_bounds.upper <= report.theoretical_bounds.upper + tol;
    return report;
}

double estimate_min_alpha(FrameFamily const& base,
                          FrameFamily const& perturbed,
                          int samples,
                          std::uint64_t seed)
{
    require_conformable(base, perturbed);
    Rng rng(seed);
    double worst = 0;
    for (std::size_t i = 0; i < base.size(); ++i)
    {
        Matrix const diff = base[i].theta - perturbed[i].theta;
        for (int s = 0; s < samples; ++s)
        {
            Vector const v = rng.unit_vector(base.dim());
            double const num = (diff * v).norm();
            double const den = (base[i].theta * v).norm();
            if (den <= 1e-300)
            {
                if (num > 0)
                {
                    return std::numeric_limits<double>::infinity();
                }
                continue;
            }
            worst = std::max(worst, num / den);
        }
    }
    return worst;
}

//---------------------------------------------------------------------------//
std::size_t operator_span_rank(std::span<Matrix const> family, double tol)
{
    if (family.empty())
    {
        fail(Errc::ShapeMismatch, "empty operator list");
    }
    auto const rows = family.front().rows();
    auto const cols = family.front().cols();
    Matrix stacked(static_cast<Eigen::Index>(family.size()), rows * cols);
    for (std::size_t i = 0; i < family.size(); ++i)
    {
        if (family[i].rows() != rows || family[i].cols() != cols)
        {
            fail(Errc::ShapeMismatch,
                 "operator " + std::to_string(i) + " has a different shape");
        }
        stacked.row(static_cast<Eigen::Index>(i)) = vectorize(family[i]).transpose();
    }
    return matrix_rank(stacked, tol);
}

bool linear_independence(std::span<Matrix const> family, double tol)
{
    return operator_span_rank(family, tol) == family.size();
}

bool check_adjoint_intertwining(FrameFamily const& family,
                                Matrix const& t_ext,
                                double tol)
{
    if (t_ext.rows() != family.dim() || t_ext.cols() != family.dim())
    {
        fail(Errc::DimMismatch, "extension must be n × n");
    }
    double worst = 0;
    for (auto const& [from, to] : family.window().successor_pairs())
    {
        Matrix const target = family[to].theta.adjoint();
        double const diff = (t_ext * family[from].theta.adjoint() - target).norm();
        double const norm = target.norm();
        worst = std::max(worst, norm < 1e-14 ? diff : diff / norm);
    }
    return worst <= tol;
}

double dependency_relation_residual(FrameFamily const& family, int ell, int n)
{
    if (n < 1)
    {
        fail(Errc::InvalidParams, "N must be a positive integer");
    }
    struct Term
    {
        int index;
        double weight;
    };
    Term const terms[] = {
        {2 * ell - 1, 1},       {2 * ell + 1, 1},
        {2 * (ell + n) - 1, 1}, {2 * (ell + n) + 1, 1},
        {2 * ell + n - 1, -2},  {2 * ell + n + 1, -2},
    };
    Matrix combination = Matrix::Zero(family.dim(), family.dim());
    for (auto const& term : terms)
    {
        combination += term.weight * family.at_index(term.index).theta;
    }
    double scale = 0;
    for (auto const& m : family.members())
    {
        scale = std::max(scale, m.theta.norm());
    }
    return combination.norm() / scale;
}

double semigroup_defect(FrameFamily const& family, int a, int b)
{
    return (family.at_index(a).theta * family.at_index(b).theta
            - family.at_index(a + b).theta)
        .norm();
}

}  // namespace gfusion
