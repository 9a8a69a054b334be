#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "frame.hpp"
#include "random.hpp"

namespace gfusion
{

//! (α, β) with 0 ≤ α, β < 1.
class PerturbationParams
{
  public:
    //! Throws InvalidParams outside [0, 1).
    PerturbationParams(double alpha, double beta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    friend bool operator==(PerturbationParams const&,
                           PerturbationParams const&) = default;

  private:
    double alpha_;
    double beta_;
};

enum class ConditionVerdict
{
    PassedSampled,
    ViolatedWitness,
};

//! Probe (c, f) with both sides of the perturbation inequality.
struct ConditionWitness
{
    std::vector<Complex> coefficients;  //!< one per member, window order
    Vector f;
    double lhs = 0;
    double rhs = 0;
};

struct ConditionResult
{
    PerturbationParams params{0, 0};
    ConditionVerdict verdict = ConditionVerdict::PassedSampled;
    std::optional<ConditionWitness> witness;
    std::size_t probes_evaluated = 0;
    //! Largest lhs − rhs seen over the evaluated probes.
    double max_excess = 0;
};

struct ConditionSides
{
    double lhs = 0;
    double rhs = 0;
};

/*!
 * Evaluates ‖Σc_k(Θ_k − Θ̂_k)f‖ and α‖Σc_kΘ_k f‖ + β‖Σc_kΘ̂_k f‖.
 */
ConditionSides evaluate_condition(FrameFamily const& base,
                                  FrameFamily const& perturbed,
                                  PerturbationParams const& params,
                                  std::span<Complex const> coefficients,
                                  Vector const& f);

/*!
 * Sampled check of the perturbation inequality.
 *
 * Probes every Kronecker-delta coefficient sequence against `samples`
 * random unit vectors, then `samples` random complex sequences with random
 * support against random unit vectors. The first probe with
 * lhs > rhs + 1e-12·(scale) is returned as a witness.
 */
ConditionResult check_condition(FrameFamily const& base,
                                FrameFamily const& perturbed,
                                PerturbationParams const& params,
                                int samples = 100,
                                std::uint64_t seed = kDefaultSeed);

//! (((1−α)/(1+β))²·A, ((1+α)/(1−β))²·B); throws InvalidParams if A ≤ 0.
FrameBounds perturbed_bounds(PerturbationParams const& params,
                             FrameBounds const& base);

struct PerturbationReport
{
    PerturbationParams params{0, 0};
    ConditionVerdict condition_verdict = ConditionVerdict::PassedSampled;
    std::optional<ConditionWitness> witness;
    FrameBounds theoretical_bounds;
    FrameBounds computed_bounds;
    bool lower_holds = false;
    bool upper_holds = false;

    bool holds() const { return lower_holds && upper_holds; }
};

/*!
 * Compares the spectral bounds of `perturbed` with perturbed_bounds() of
 * `base`. `condition` must be a PassedSampled result for the same
 * parameters, otherwise ConditionNotEstablished is thrown.
 */
PerturbationReport verify_perturbed_frame(FrameFamily const& base,
                                          FrameFamily const& perturbed,
                                          ConditionResult const& condition,
                                          double tol = kDefaultTol);

/*!
 * Sampled lower bound on the smallest admissible α for β = 0:
 * max over i and probes v of ‖(Θ_i − Θ̂_i)v‖ / ‖Θ_i v‖. Returns +inf if a
 * probe is annihilated by Θ_i but not by Θ̂_i.
 */
double estimate_min_alpha(FrameFamily const& base,
                          FrameFamily const& perturbed,
                          int samples = 100,
                          std::uint64_t seed = kDefaultSeed);

//! Vectorized operators are independent: rank of the stack equals count.
bool linear_independence(std::span<Matrix const> family,
                         double tol = kDefaultTol);

//! Rank of the stacked vectorizations.
std::size_t operator_span_rank(std::span<Matrix const> family,
                               double tol = kDefaultTol);

//! max_k ‖T_ext·Θ_k* − Θ_{k+1}*‖_F / ‖Θ_{k+1}*‖_F ≤ tol.
bool check_adjoint_intertwining(FrameFamily const& family,
                                Matrix const& t_ext,
                                double tol = kDefaultTol);

/*!
 * ‖Θ_{2ℓ−1} + Θ_{2ℓ+1} + Θ_{2(ℓ+N)−1} + Θ_{2(ℓ+N)+1} − 2Θ_{2ℓ+N−1}
 *  − 2Θ_{2ℓ+N+1}‖_F divided by the largest member norm.
 *
 * Cyclic windows reduce indices mod m; Truncated windows throw
 * IndexOutOfWindow when an index falls outside.
 */
double dependency_relation_residual(FrameFamily const& family, int ell, int n);

//! ‖Θ_a·Θ_b − Θ_{a+b}‖_F.
double semigroup_defect(FrameFamily const& family, int a, int b);

}  // namespace gfusion
