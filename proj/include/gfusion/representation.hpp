#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frame.hpp"

namespace gfusion
{

//---------------------------------------------------------------------------//
/*!
 * Operator T with Θ_{k+1} ≈ T·Θ_k, embedded as n × n and zero on the
 * orthogonal complement of span{M_k}.
 */
struct Representer
{
    Matrix T;
    //! max_k ‖T·Θ_k − Θ_{k+1}‖_F / ‖Θ_{k+1}‖_F (absolute for ‖Θ_{k+1}‖ < 1e-14)
    double residual = 0;
    //! Largest singular value of T on span{M_k}.
    double op_norm = 0;
    //! Smallest singular value of T on span{M_k}.
    double min_singular = 0;
};

/*!
 * Least-squares representer over operators supported on span{M_k}.
 *
 * Pairs run over k_min..k_max−1 for Truncated windows and wrap for Cyclic
 * ones. Rank-deficient systems get the minimum-norm solution.
 */
Representer solve_representer(FrameFamily const& family);

//! Max-k relative residual of Θ_{k+1} = T·Θ_k, normalized as in Representer.
double representation_residual(FrameFamily const& family, Matrix const& T);

bool verify_representation(FrameFamily const& family,
                           Matrix const& T,
                           double tol = kDefaultTol);

//---------------------------------------------------------------------------//
enum class CheckMode
{
    Strict,  //!< failed hypotheses throw HypothesisViolation
    Audit,   //!< failed hypotheses are reported
};

//! Outcome of 1 ≤ ‖T‖ ≤ √(B/A).
struct SandwichReport
{
    bool asserted = false;  //!< all hypotheses held, so `holds` is a verdict
    bool holds = false;
    std::optional<std::string> failed_hypothesis;
    double lower = 1;
    double op_norm = 0;
    double upper = 0;  //!< √(B/A) with bounds on span{M_k}
    FrameBounds bounds;
};

/*!
 * Norm sandwich 1 − tol ≤ ‖T‖ ≤ √(B/A) + tol.
 *
 * Hypotheses: the family is a frame on span{M_k}, the representer residual
 * is ≤ tol, every Θ_k is self-adjoint and maps M_k onto M_k, and the window
 * is Cyclic. Truncated windows always run as an audit and never assert.
 */
SandwichReport norm_sandwich_check(FrameFamily const& family,
                                   Representer const& rep,
                                   double tol = kDefaultTol,
                                   CheckMode mode = CheckMode::Strict);

struct ShiftInvarianceReport
{
    std::size_t kernel_dim = 0;
    //! Largest ‖𝒯v − P_N 𝒯v‖ / ‖v‖ over kernel basis vectors v.
    double max_violation = 0;
};

/*!
 * Checks that N_U ⊂ ℋ is invariant under the cyclic right shift
 * (𝒯f)_k = f_{k+1}. The kernel is computed in block coordinates
 * f_k = basis_k·c_k so that it lies in ℋ.
 */
ShiftInvarianceReport kernel_shift_invariance(FrameFamily const& family,
                                              Representer const& rep,
                                              double tol = kDefaultTol);

//---------------------------------------------------------------------------//
//! Window-parameterized fixture: the family at half-width K plus the
//! candidate invertible representer.
struct ScanFixture
{
    FrameFamily family;
    Matrix candidate;
};

using FamilyGenerator = std::function<ScanFixture(int half_width)>;

struct ScanRow
{
    int half_width = 0;
    int members = 0;
    double upper = 0;       //!< B(K)
    double predicted = 0;   //!< (2K+1)·λ_max(Θ_0*Θ_0)
    double rel_error = 0;   //!< |B − predicted| / predicted
    double ratio = 0;           //!< B(K)/B(K₀)
    double expected_ratio = 0;  //!< (2K+1)/(2K₀+1)
};

struct ScanReport
{
    std::vector<ScanRow> rows;
    double slope = 0;  //!< least-squares slope of log B against log(2K+1)
    double max_rel_error = 0;
    double max_ratio_deviation = 0;  //!< max |ratio/expected − 1|
    bool ratios_within_tolerance = false;
    bool slope_within_tolerance = false;

    bool passed() const
    {
        return ratios_within_tolerance && slope_within_tolerance;
    }
};

//! Relative tolerance for both the ratio and the slope verdict.
inline constexpr double kGrowthTol = 0.05;

/*!
 * Tracks the upper frame bound of tight families with an isometric
 * invertible representer as the window grows. Linear growth of B(K) is the
 * finite-window signature that no ℤ-indexed such frame exists.
 *
 * Throws GeneratorViolation if a generated candidate is not an isometry on
 * span{M_k}, does not represent the family, or the family is not tight.
 */
ScanReport invertibility_obstruction_scan(FamilyGenerator const& generator,
                                          std::span<int const> half_widths);

}  // namespace gfusion
