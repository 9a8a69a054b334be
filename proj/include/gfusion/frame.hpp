#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "numerics.hpp"

namespace gfusion
{

//! Frame-ness threshold: a family is a frame when A > kFrameThreshold·B.
inline constexpr double kFrameThreshold = 1e-9;
//! Relative tolerance of the range-containment invariant.
inline constexpr double kRangeTol = 1e-9;
//! Gram deviation allowed for subspace bases at construction.
inline constexpr double kOrthonormalTol = 1e-10;

enum class Semantics
{
    Truncated,
    Cyclic,
};

//---------------------------------------------------------------------------//
/*!
 * Finite index window standing in for ℤ.
 *
 * Truncated windows cover [k_min, k_max] and sums simply stop at the edges.
 * Cyclic windows cover the residues 0..m-1 and successor/predecessor wrap.
 */
struct Window
{
    Semantics semantics = Semantics::Truncated;
    int k_min = 0;
    int k_max = 0;

    static Window truncated(int k_min, int k_max);
    static Window cyclic(int modulus);

    int size() const { return k_max - k_min + 1; }
    bool contains(int k) const { return k >= k_min && k <= k_max; }
    //! Position of k in the window, reducing mod m under Cyclic semantics.
    std::optional<std::size_t> position(int k) const;
    //! Consecutive (k, k+1) position pairs: wraps under Cyclic semantics.
    std::vector<std::pair<std::size_t, std::size_t>> successor_pairs() const;

    friend bool operator==(Window const&, Window const&) = default;
};

//---------------------------------------------------------------------------//
/*!
 * Subspace M of Cⁿ held by an orthonormal basis (n × d, 1 ≤ d ≤ n).
 */
class Subspace
{
  public:
    static Subspace full(int n);
    //! Validates basis*·basis = I within tol; throws InvalidSubspace.
    static Subspace from_basis(Matrix basis, double tol = kOrthonormalTol);
    //! Orthonormalized column space of `vectors`; throws InvalidSubspace if zero.
    static Subspace span_of(Matrix const& vectors, double tol = kDefaultTol);

    int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    int dim() const { return static_cast<int>(basis_.cols()); }
    Matrix const& basis() const { return basis_; }
    //! Orthogonal projection basis·basis*.
    Matrix projector() const;
    //! ‖(I − π)v‖ ≤ tol·‖v‖.
    bool contains(Vector const& v, double tol = kRangeTol) const;

  private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}

    Matrix basis_;
};

struct Member
{
    int k = 0;
    Subspace subspace;
    Matrix theta;
};

//---------------------------------------------------------------------------//
/*!
 * Window of pairs (M_k, Θ_k) with Θ_k : Cⁿ → M_k stored as n × n matrices.
 *
 * Immutable after construction. The constructor enforces consecutive indices
 * matching the window, range containment ‖(I − π_k)Θ_k‖_F ≤ 1e-9·‖Θ_k‖_F,
 * finiteness, and at least one nonzero member; violations throw
 * InvalidFamily.
 */
class FrameFamily
{
  public:
    FrameFamily(Window window, std::vector<Member> members);

    int dim() const { return dim_; }
    Window const& window() const { return window_; }
    Semantics semantics() const { return window_.semantics; }
    std::span<Member const> members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    Member const& operator[](std::size_t pos) const { return members_[pos]; }
    //! Member with index k (reduced mod m for Cyclic); throws IndexOutOfWindow.
    Member const& at_index(int k) const;

    //! Same window and subspaces with each Θ_k replaced.
    FrameFamily with_operators(std::vector<Matrix> thetas) const;

  private:
    Window window_;
    std::vector<Member> members_;
    int dim_ = 0;
};

struct FrameBounds
{
    double lower = 0;
    double upper = 0;

    bool is_frame() const { return lower > kFrameThreshold * upper; }
};

//! Dual family {Γ_k}; same window and subspaces as its primal.
class DualFamily
{
  public:
    explicit DualFamily(FrameFamily family) : family_(std::move(family)) {}

    FrameFamily const& family() const { return family_; }

  private:
    FrameFamily family_;
};

//---------------------------------------------------------------------------//
// Frame machinery
//---------------------------------------------------------------------------//

//! S = Σ_k Θ_k*Θ_k, summed in window order.
Matrix frame_operator(FrameFamily const& family);

//! Optimal bounds (λ_min(S), λ_max(S)) on the full space; λ_min clamped at 0.
FrameBounds frame_bounds(FrameFamily const& family);

//! Optimal bounds of S compressed to span{M_k}.
FrameBounds frame_bounds_on_span(FrameFamily const& family);

//! Orthonormal basis of span{M_k}.
Matrix span_basis(FrameFamily const& family);

//! (B − A)/B ≤ rel_tol; throws NotAFrame when the family is not a frame.
bool is_tight(FrameFamily const& family, double rel_tol = 1e-9);

//! Analysis images {Θ_k f}.
std::vector<Vector> analysis(FrameFamily const& family, Vector const& f);

/*!
 * Synthesis U({f_k}) = Σ_k Θ_k* f_k.
 *
 * Blocks must lie in their subspace M_k; out-of-subspace blocks throw
 * BlockOutOfSubspace rather than being projected.
 */
Vector synthesis(FrameFamily const& family, std::span<Vector const> blocks);

//! Block row [Θ_{k_min}* | … | Θ_{k_max}*], n × (n·count).
Matrix synthesis_matrix(FrameFamily const& family);

//! Γ_k = Θ_k S⁻¹; throws NotAFrame when S is numerically singular.
DualFamily canonical_dual(FrameFamily const& family);

//! Σ_k Θ_k* Γ_k f.
Vector reconstruct(FrameFamily const& family,
                   DualFamily const& dual,
                   Vector const& f);

//! Largest ‖f − Σ Θ_k*Γ_k f‖/‖f‖ over the probes.
double reconstruction_error(FrameFamily const& family,
                            DualFamily const& dual,
                            std::span<Vector const> probes);

//! Σ_k ‖Θ_k f‖².
double analysis_energy(FrameFamily const& family, Vector const& f);

//---------------------------------------------------------------------------//
// Structural validation
//---------------------------------------------------------------------------//

struct StructureRequirements
{
    bool self_adjoint = false;
    bool onto_subspace = false;
    bool projection = false;
};

struct MemberValidation
{
    int k = 0;
    bool range_contained = false;
    bool self_adjoint = false;
    bool onto_subspace = false;
    bool projection = false;
    double range_deviation = 0;
    double self_adjoint_deviation = 0;
    double projection_deviation = 0;
    std::size_t image_rank = 0;
};

struct ValidationReport
{
    StructureRequirements required;
    std::vector<MemberValidation> members;

    bool all_range_contained() const;
    bool all_self_adjoint() const;
    bool all_onto_subspace() const;
    bool all_projections() const;
    //! Range containment plus every required check.
    bool passed() const;
    //! Name of the first failing required check, if any.
    std::optional<std::string> first_failure() const;
};

/*!
 * Per-index structural report. Every flag is computed; `required` marks the
 * ones that count toward passed().
 *
 * Self-adjointness: ‖Θ_k − Θ_k*‖_F ≤ tol·‖Θ_k‖_F. Onto: rank(Θ_k·basis_k) = d_k.
 * Projection: ‖Θ_k² − Θ_k‖_F ≤ tol·‖Θ_k‖_F.
 */
ValidationReport validate_structure(FrameFamily const& family,
                                    StructureRequirements required,
                                    double tol = kDefaultTol);

//! Θ_k = v_k·π_{M_k} on a truncated window starting at k_min.
FrameFamily weighted_fusion_frame(std::span<Subspace const> subspaces,
                                  std::span<double const> weights,
                                  int k_min = 0);

}  // namespace gfusion
