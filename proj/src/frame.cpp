#include "gfusion/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gfusion/error.hpp"

namespace gfusion
{
//---------------------------------------------------------------------------//
// Window
//---------------------------------------------------------------------------//
Window Window::truncated(int k_min, int k_max)
{
    if (k_max < k_min)
    {
        fail(Errc::InvalidFamily, "window [" + std::to_string(k_min) + ", "
                                      + std::to_string(k_max) + "] is empty");
    }
    return {Semantics::Truncated, k_min, k_max};
}

Window Window::cyclic(int modulus)
{
    if (modulus < 1)
    {
        fail(Errc::InvalidFamily, "cyclic modulus must be positive");
    }
    return {Semantics::Cyclic, 0, modulus - 1};
}

std::optional<std::size_t> Window::position(int k) const
{
    if (semantics == Semantics::Cyclic)
    {
        int const m = size();
        return static_cast<std::size_t>(((k % m) + m) % m);
    }
    if (!contains(k))
    {
        return std::nullopt;
    }
    return static_cast<std::size_t>(k - k_min);
}

std::vector<std::pair<std::size_t, std::size_t>> Window::successor_pairs() const
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    auto const count = static_cast<std::size_t>(size());
    for (std::size_t i = 0; i + 1 < count; ++i)
    {
        pairs.emplace_back(i, i + 1);
    }
    if (semantics == Semantics::Cyclic)
    {
        pairs.emplace_back(count - 1, 0);
    }
    return pairs;
}

//---------------------------------------------------------------------------//
// Subspace
//---------------------------------------------------------------------------//
Subspace Subspace::full(int n)
{
    if (n < 1)
    {
        fail(Errc::InvalidSubspace, "ambient dimension must be positive");
    }
    return Subspace(Matrix::Identity(n, n));
}

Subspace Subspace::from_basis(Matrix basis, double tol)
{
    if (!all_finite(basis))
    {
        fail(Errc::InvalidSubspace, "basis has non-finite entries");
    }
    if (basis.rows() < 1 || basis.cols() < 1 || basis.cols() > basis.rows())
    {
        fail(Errc::InvalidSubspace,
             "basis must be n × d with 1 ≤ d ≤ n (got "
                 + std::to_string(basis.rows()) + " × "
                 + std::to_string(basis.cols()) + ")");
    }
    auto const d = basis.cols();
    double const deviation
        = (basis.adjoint() * basis - Matrix::Identity(d, d)).norm();
    if (deviation > tol)
    {
        fail(Errc::InvalidSubspace,
             "basis is not orthonormal (Gram deviation "
                 + std::to_string(deviation) + ")");
    }
    return Subspace(std::move(basis));
}

Subspace Subspace::span_of(Matrix const& vectors, double tol)
{
    Matrix basis = range_basis(vectors, tol);
    if (basis.cols() == 0)
    {
        fail(Errc::InvalidSubspace, "cannot span a subspace from zero vectors");
    }
    return Subspace(std::move(basis));
}

Matrix Subspace::projector() const
{
    return basis_ * basis_.adjoint();
}

bool Subspace::contains(Vector const& v, double tol) const
{
    Vector const residual = v - basis_ * (basis_.adjoint() * v);
    return residual.norm() <= tol * v.norm();
}

//---------------------------------------------------------------------------//
// FrameFamily
//---------------------------------------------------------------------------//
FrameFamily::FrameFamily(Window window, std::vector<Member> members)
    : window_(window), members_(std::move(members))
{
    if (window_.k_max < window_.k_min)
    {
        fail(Errc::InvalidFamily, "empty window");
    }
    if (window_.semantics == Semantics::Cyclic && window_.k_min != 0)
    {
        fail(Errc::InvalidFamily, "cyclic windows must start at index 0");
    }
    if (members_.size() != static_cast<std::size_t>(window_.size()))
    {
        fail(Errc::InvalidFamily,
             "window holds " + std::to_string(window_.size()) + " indices but "
                 + std::to_string(members_.size()) + " members were given");
    }
    std::sort(members_.begin(), members_.end(),
              [](Member const& a, Member const& b) { return a.k < b.k; });

    dim_ = members_.front().subspace.ambient_dim();
    bool any_nonzero = false;
    for (std::size_t i = 0; i < members_.size(); ++i)
    {
        auto const& m = members_[i];
        std::string const where = "member k=" + std::to_string(m.k);
        if (m.k != window_.k_min + static_cast<int>(i))
        {
            fail(Errc::InvalidFamily, "indices are not consecutive at " + where);
        }
        if (m.subspace.ambient_dim() != dim_ || m.theta.rows() != dim_
            || m.theta.cols() != dim_)
        {
            fail(Errc::InvalidFamily, where + " is not " + std::to_string(dim_)
                                          + "-dimensional");
        }
        if (!all_finite(m.theta))
        {
            fail(Errc::InvalidFamily, where + " has non-finite entries");
        }
        double const norm = m.theta.norm();
        Matrix const outside = m.theta - m.subspace.projector() * m.theta;
        if (outside.norm() > kRangeTol * norm)
        {
            fail(Errc::InvalidFamily, where + " has range outside M_k");
        }
        any_nonzero = any_nonzero || norm > 0;
    }
    if (!any_nonzero)
    {
        fail(Errc::InvalidFamily, "every operator is zero");
    }
}

Member const& FrameFamily::at_index(int k) const
{
    auto const pos = window_.position(k);
    if (!pos)
    {
        fail(Errc::IndexOutOfWindow, "index " + std::to_string(k)
                                         + " lies outside the window");
    }
    return members_[*pos];
}

FrameFamily FrameFamily::with_operators(std::vector<Matrix> thetas) const
{
    if (thetas.size() != members_.size())
    {
        fail(Errc::ShapeMismatch, "operator count does not match the window");
    }
    std::vector<Member> members;
    members.reserve(members_.size());
    for (std::size_t i = 0; i < members_.size(); ++i)
    {
        members.push_back({members_[i].k, members_[i].subspace,
                           std::move(thetas[i])});
    }
    return FrameFamily(window_, std::move(members));
}

//---------------------------------------------------------------------------//
// Frame machinery
//---------------------------------------------------------------------------//
namespace
{
void require_length(FrameFamily const& family, Vector const& f)
{
    if (f.size() != family.dim())
    {
        fail(Errc::DimMismatch, "vector has length " + std::to_string(f.size())
                                    + ", family dimension is "
                                    + std::to_string(family.dim()));
    }
}

FrameBounds bounds_from_spectrum(std::vector<double> const& eigenvalues)
{
    FrameBounds bounds;
    bounds.lower = std::max(eigenvalues.front(), 0.0);
    bounds.upper = std::max(eigenvalues.back(), 0.0);
    return bounds;
}
}  // namespace

Matrix frame_operator(FrameFamily const& family)
{
    auto const n = family.dim();
    Matrix s = Matrix::Zero(n, n);
    for (auto const& m : family.members())
    {
        s.noalias() += m.theta.adjoint() * m.theta;
    }
    return s;
}

FrameBounds frame_bounds(FrameFamily const& family)
{
    return bounds_from_spectrum(hermitian_eigenvalues(frame_operator(family)));
}

Matrix span_basis(FrameFamily const& family)
{
    Eigen::Index total = 0;
    for (auto const& m : family.members())
    {
        total += m.subspace.dim();
    }
    Matrix stacked(family.dim(), total);
    Eigen::Index offset = 0;
    for (auto const& m : family.members())
    {
        stacked.middleCols(offset, m.subspace.dim()) = m.subspace.basis();
        offset += m.subspace.dim();
    }
    return range_basis(stacked);
}

FrameBounds frame_bounds_on_span(FrameFamily const& family)
{
    Matrix const q = span_basis(family);
    Matrix const compressed = q.adjoint() * frame_operator(family) * q;
    return bounds_from_spectrum(hermitian_eigenvalues(compressed));
}

bool is_tight(FrameFamily const& family, double rel_tol)
{
    auto const bounds = frame_bounds(family);
    if (!bounds.is_frame())
    {
        fail(Errc::NotAFrame, "lower frame bound is zero at tolerance");
    }
    return (bounds.upper - bounds.lower) / bounds.upper <= rel_tol;
}

std::vector<Vector> analysis(FrameFamily const& family, Vector const& f)
{
    require_length(family, f);
    std::vector<Vector> images;
    images.reserve(family.size());
    for (auto const& m : family.members())
    {
        images.emplace_back(m.theta * f);
    }
    return images;
}

double analysis_energy(FrameFamily const& family, Vector const& f)
{
    double energy = 0;
    for (auto const& image : analysis(family, f))
    {
        energy += image.squaredNorm();
    }
    return energy;
}

Vector synthesis(FrameFamily const& family, std::span<Vector const> blocks)
{
    if (blocks.size() != family.size())
    {
        fail(Errc::BlockCountMismatch,
             std::to_string(blocks.size()) + " blocks for "
                 + std::to_string(family.size()) + " members");
    }
    Vector result = Vector::Zero(family.dim());
    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        auto const& m = family[i];
        require_length(family, blocks[i]);
        if (!m.subspace.contains(blocks[i]))
        {
            fail(Errc::BlockOutOfSubspace,
                 "block for k=" + std::to_string(m.k) + " is not in M_k");
        }
        result.noalias() += m.theta.adjoint() * blocks[i];
    }
    return result;
}

Matrix synthesis_matrix(FrameFamily const& family)
{
    auto const n = family.dim();
    Matrix u(n, n * static_cast<Eigen::Index>(family.size()));
    for (std::size_t i = 0; i < family.size(); ++i)
    {
        u.middleCols(static_cast<Eigen::Index>(i) * n, n)
            = family[i].theta.adjoint();
    }
    return u;
}

DualFamily canonical_dual(FrameFamily const& family)
{
    Matrix const s = frame_operator(family);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.adjoint()));
    auto const& values = solver.eigenvalues();
    if (!(values(0) > kFrameThreshold * values(values.size() - 1)))
    {
        fail(Errc::NotAFrame, "frame operator is numerically singular");
    }
    Matrix const& v = solver.eigenvectors();
    Matrix const s_inv = v * values.cwiseInverse().asDiagonal() * v.adjoint();

    std::vector<Matrix> gammas;
    gammas.reserve(family.size());
    for (auto const& m : family.members())
    {
        gammas.emplace_back(m.theta * s_inv);
    }
    return DualFamily(family.with_operators(std::move(gammas)));
}

Vector reconstruct(FrameFamily const& family,
                   DualFamily const& dual,
                   Vector const& f)
{
    auto const& d = dual.family();
    if (d.dim() != family.dim() || d.size() != family.size())
    {
        fail(Errc::DimMismatch, "dual family is not conformable");
    }
    require_length(family, f);
    Vector result = Vector::Zero(family.dim());
    for (std::size_t i = 0; i < family.size(); ++i)
    {
        result.noalias() += family[i].theta.adjoint() * (d[i].theta * f);
    }
    return result;
}

double reconstruction_error(FrameFamily const& family,
                            DualFamily const& dual,
                            std::span<Vector const> probes)
{
    double worst = 0;
    for (auto const& f : probes)
    {
        double const norm = f.norm();
        if (norm == 0)
        {
            continue;
        }
        worst = std::max(worst, (f - reconstruct(family, dual, f)).norm() / norm);
    }
    return worst;
}

//---------------------------------------------------------------------------//
// Structural validation
//---------------------------------------------------------------------------//
bool ValidationReport::all_range_contained() const
{
    return std::all_of(members.begin(), members.end(),
                       [](auto const& m) { return m.range_contained; });
}

bool ValidationReport::all_self_adjoint() const
{
    return std::all_of(members.begin(), members.end(),
                       [](auto const& m) { return m.self_adjoint; });
}

bool ValidationReport::all_onto_subspace() const
{
    return std::all_of(members.begin(), members.end(),
                       [](auto const& m) { return m.onto_subspace; });
}

bool ValidationReport::all_projections() const
{
    return std::all_of(members.begin(), members.end(),
                       [](auto const& m) { return m.projection; });
}

bool ValidationReport::passed() const
{
    return !first_failure().has_value();
}

std::optional<std::string> ValidationReport::first_failure() const
{
    if (!all_range_contained())
    {
        return "range-containment";
    }
    if (required.self_adjoint && !all_self_adjoint())
    {
        return "self-adjoint";
    }
    if (required.onto_subspace && !all_onto_subspace())
    {
        return "onto-subspace";
    }
    if (required.projection && !all_projections())
    {
        return "projection";
    }
    return std::nullopt;
}

ValidationReport validate_structure(FrameFamily const& family,
                                    StructureRequirements required,
                                    double tol)
{
    ValidationReport report;
    report.required = required;
    for (auto const& m : family.members())
    {
        MemberValidation v;
        v.k = m.k;
        double const norm = m.theta.norm();
        auto relative = [norm](double x) { return norm > 0 ? x / norm : x; };

        v.range_deviation
            = relative((m.theta - m.subspace.projector() * m.theta).norm());
        v.range_contained = v.range_deviation <= kRangeTol;

        v.self_adjoint_deviation = relative((m.theta - m.theta.adjoint()).norm());
        v.self_adjoint = v.self_adjoint_deviation <= tol;

        v.image_rank = matrix_rank(m.theta * m.subspace.basis(), tol);
        v.onto_subspace
            = v.image_rank == static_cast<std::size_t>(m.subspace.dim());

        v.projection_deviation = relative((m.theta * m.theta - m.theta).norm());
        v.projection = v.projection_deviation <= tol;

        report.members.push_back(v);
    }
    return report;
}

FrameFamily weighted_fusion_frame(std::span<Subspace const> subspaces,
                                  std::span<double const> weights,
                                  int k_min)
{
    if (subspaces.empty() || subspaces.size() != weights.size())
    {
        fail(Errc::ShapeMismatch, "need one weight per subspace");
    }
    std::vector<Member> members;
    for (std::size_t i = 0; i < subspaces.size(); ++i)
    {
        if (!(weights[i] > 0))
        {
            fail(Errc::NonPositiveWeight,
                 "weight " + std::to_string(i) + " is not positive");
        }
        members.push_back({k_min + static_cast<int>(i), subspaces[i],
                           weights[i] * subspaces[i].projector()});
    }
    int const k_max = k_min + static_cast<int>(subspaces.size()) - 1;
    return FrameFamily(Window::truncated(k_min, k_max), std::move(members));
}

}  // namespace gfusion
