#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frame.hpp"
#include "representation.hpp"

namespace gfusion
{

//! Permutation matrix of convolution by δ_x on Z_n: (δ_x∗f)(y) = f(y − x).
Matrix dirac_shift(int n, int x);

//---------------------------------------------------------------------------//
/*!
 * Finitely supported measure μ = Σ w_j δ_{x_j} on Z_n acting by convolution.
 */
class CyclicGroupConvolution
{
  public:
    //! Throws OutOfRange on residues outside [0, n) or repeated elements.
    CyclicGroupConvolution(int order, std::vector<std::pair<int, Complex>> support);

    int order() const { return order_; }
    auto const& support() const { return support_; }
    //! Matrix of f ↦ μ∗f.
    Matrix matrix() const;

  private:
    int order_;
    std::vector<std::pair<int, Complex>> support_;
};

//---------------------------------------------------------------------------//
struct ShiftFamilyParams
{
    int n = 16;
    int half_width = 8;
    int base_element = 1;
    double decay = 0.5;
    //! Window [0, K] instead of [−K, K].
    bool one_sided = false;
    //! Skip the distinct-shift requirement (tightness does not need it).
    bool allow_repeated_shifts = false;
};

/*!
 * Θ_k = r^{|k|}·δ_{k·x}∗ on Z_n with M_k = Cⁿ, a tight family with
 * A = B = Σ r^{2|k|}. Requires the order of x to exceed 2K (K for one-sided
 * windows) unless repeated shifts are allowed; throws SubgroupTooSmall.
 */
FrameFamily example_51_family(ShiftFamilyParams const& params);

/*!
 * Θ_k = δ_{k·x0}∗Θ_0 on [−K, K]; Θ_0 defaults to the identity. Every member
 * satisfies ‖Θ_k f‖ = ‖Θ_0 f‖.
 */
FrameFamily example_53_family(int n,
                              int half_width,
                              int x0,
                              std::optional<Matrix> theta0 = std::nullopt);

struct SelfAdjointFamilyParams
{
    int n = 4;
    Window window = Window::truncated(0, 3);
    std::uint64_t seed = 42;
    double lo = 1;
    double hi = 2;
    //! Use M_k = Cⁿ instead of random subspaces.
    bool full_space = false;
};

/*!
 * Random Θ_k = Θ_k* with eigenvalues in [lo, hi] on a random M_k (so
 * Θ_k(M_k) = M_k) and zero on M_k^⊥. Throws InvalidRange unless 0 < lo ≤ hi.
 */
FrameFamily random_self_adjoint_family(SelfAdjointFamilyParams const& params);

struct ReflectionFamilyParams
{
    int n = 4;
    int subspace_dim = 4;
    int period = 4;  //!< cyclic modulus, must be even
    std::uint64_t seed = 42;
    double lo = 1;
    double hi = 3;
};

/*!
 * Exactly representable self-adjoint cyclic family on a random M:
 * Θ_0 = H (positive definite on M), T = H^{1/2} J H^{−1/2} with J a random
 * reflection of M, Θ_k = T^k Θ_0. Every Θ_k is self-adjoint and onto M.
 */
FrameFamily reflection_cyclic_family(ReflectionFamilyParams const& params);

//! Θ_k = scale·W^k on a cyclic window of modulus m with W unitary, W^m = I.
FrameFamily unitary_power_family(int n, int period, std::uint64_t seed,
                                 double scale = 1);

//! Θ_k = scale·C^k with C the cyclic shift of Cⁿ, cyclic modulus m.
FrameFamily cyclic_shift_family(int n, int period, double scale = 1);

//! Θ_k = x^k·base with M_k = Cⁿ.
FrameFamily scalar_geometric_family(Matrix const& base, Complex x, Window window);

//! Θ_k = theta (range in `subspace`) at every index of the window.
FrameFamily constant_family(Subspace const& subspace,
                            Matrix const& theta,
                            Window window);

//! Θ̂_k = factor·Θ_k.
FrameFamily scaled_family(FrameFamily const& family, Complex factor);

//---------------------------------------------------------------------------//
// Window-parameterized fixtures for the invertibility obstruction scan
//---------------------------------------------------------------------------//

//! Θ_k = I on Cⁿ, T = I.
ScanFixture identity_scan_fixture(int n, int half_width);
//! Θ_k = H^k with H a self-adjoint unitary (random reflection), T = H.
ScanFixture reflection_scan_fixture(int n, int half_width, std::uint64_t seed);
//! Θ_k = δ_{k·x0}∗, T = δ_{x0}∗.
ScanFixture example_53_scan_fixture(int n, int half_width, int x0);

}  // namespace gfusion
