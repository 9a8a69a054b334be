#include <doctest.h>

#include <cmath>

#include "gfusion/error.hpp"
#include "gfusion/fixtures.hpp"
#include "gfusion/representation.hpp"
#include "support.hpp"

using namespace gfusion;
using testing::Gen;

namespace
{
FrameFamily full_family(std::vector<Matrix> thetas, Window window)
{
    int const n = static_cast<int>(thetas.front().rows());
    std::vector<Member> members;
    for (std::size_t i = 0; i < thetas.size(); ++i)
        members.push_back({window.k_min + static_cast<int>(i), Subspace::full(n), thetas[i]});
    return FrameFamily(window, std::move(members));
}

Errc code_of(auto&& call)
{
    try
    {
        call();
    }
    catch (Error const& e)
    {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::Usage;
}

// Brute-force kernel of U on ℋ = ⊕M_k (all M_k = Cⁿ here) and explicit shift.
double brute_force_shift_violation(FrameFamily const& f)
{
    Matrix const u = synthesis_matrix(f);
    auto const kernel = nullspace_basis(u);
    int const n = f.dim();
    int const m = static_cast<int>(f.size());
    double worst = 0;
    for (auto const& v : kernel)
    {
        Vector shifted(v.size());
        for (int k = 0; k < m; ++k)
            shifted.segment(k * n, n) = v.segment(((k + 1) % m) * n, n);
        worst = std::max(worst, (u * shifted).norm() / (u.norm() * shifted.norm()));
    }
    return worst;
}
}  // namespace

TEST_SUITE("representation")
{
TEST_CASE("geometric shift family has T = r·C")
{
    for (double r : {0.5, 0.8, 1.0})
    {
        int const n = 5;
        Matrix const c = testing::shift(n);
        std::vector<Matrix> thetas;
        Matrix power = Matrix::Identity(n, n);
        for (int k = 0; k <= 4; ++k)
        {
            thetas.push_back(std::pow(r, k) * power);
            power = c * power;
        }
        auto const f = full_family(thetas, Window::truncated(0, 4));
        auto const rep = solve_representer(f);
        CHECK(rep.residual <= 1e-10);
        CHECK((rep.T - r * c).norm() <= 1e-10);
        CHECK(rep.op_norm == doctest::Approx(r).epsilon(1e-12));
        CHECK(verify_representation(f, rep.T));
        CHECK_FALSE(verify_representation(f, Matrix::Zero(n, n)));
        Gen gen(301);
        Matrix const noisy = rep.T + 1e-3 * gen.matrix(n, n);
        CHECK_FALSE(verify_representation(f, noisy, 1e-6));
    }
}

TEST_CASE("constant and swap families")
{
    Gen gen(302);
    Matrix const theta = gen.matrix(3, 3);
    auto const constant = full_family({theta, theta, theta}, Window::truncated(0, 2));
    auto const rep = solve_representer(constant);
    CHECK((rep.T - Matrix::Identity(3, 3)).norm() <= 1e-10);

    // diag(1,0) → diag(0,1) has no exact representer: T·diag(1,0) has a zero
    // second column. The min-norm least-squares answer is T = 0.
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 0) = 1;
    b(1, 1) = 1;
    auto const diagonal = full_family({a, b}, Window::truncated(0, 1));
    auto const d = solve_representer(diagonal);
    CHECK(d.residual == doctest::Approx(1));
    CHECK(d.T.norm() <= 1e-12);

    // e₁e₁* → e₂e₁* is matched column by column by the swap.
    Matrix moved = Matrix::Zero(2, 2);
    moved(1, 0) = 1;
    auto const swap = full_family({a, moved}, Window::truncated(0, 1));
    auto const s = solve_representer(swap);
    CHECK(s.residual <= 1e-10);
    CHECK(std::abs(s.T(1, 0) - Complex(1)) <= 1e-12);
    // Minimum-norm solution leaves the unused column zero.
    CHECK(s.T.col(1).norm() <= 1e-12);

    auto const single = full_family({a}, Window::truncated(0, 0));
    CHECK(code_of([&] { (void)solve_representer(single); }) == Errc::TooFewMembers);
    CHECK(code_of([&] { (void)representation_residual(swap, Matrix::Zero(3, 3)); })
          == Errc::DimMismatch);
}

TEST_CASE("property: exact representers are recovered and the solve is idempotent")
{
    Gen gen(303);
    for (int trial = 0; trial < 25; ++trial)
    {
        int const n = gen.integer(2, 5);
        int const d = gen.integer(1, n);
        auto const space = Subspace::span_of(gen.matrix(n, d));
        Matrix const q = space.basis();
        Matrix const t = q * gen.matrix(d, d) * q.adjoint() * 0.6;
        std::vector<Member> members;
        Matrix theta = q * gen.matrix(d, n);
        int const count = gen.integer(2, 5);
        for (int k = 0; k < count; ++k)
        {
            members.push_back({k, space, theta});
            theta = t * theta;
        }
        FrameFamily const f(Window::truncated(0, count - 1), members);
        auto const rep = solve_representer(f);
        CHECK(rep.residual <= 1e-9);
        // Full rank when Θ_0 already spans M.
        if (matrix_rank(q.adjoint() * members[0].theta) == static_cast<std::size_t>(d))
            CHECK((rep.T - t).norm() <= 1e-8 * (t.norm() + 1));
        // T maps the span into itself and is zero off it.
        Matrix const off = Matrix::Identity(n, n) - space.projector();
        CHECK((off * rep.T).norm() <= 1e-10 * (rep.T.norm() + 1));
        CHECK((rep.T * off).norm() <= 1e-10 * (rep.T.norm() + 1));
        // Re-solving on T-propagated data returns the same T.
        std::vector<Matrix> propagated;
        Matrix current = members[0].theta;
        for (int k = 0; k < count; ++k)
        {
            propagated.push_back(current);
            current = rep.T * current;
        }
        auto const again = solve_representer(f.with_operators(propagated));
        CHECK((again.T - rep.T).norm() <= 1e-6 * (rep.T.norm() + 1));
    }
}

TEST_CASE("sandwich refuses non-self-adjoint shifts")
{
    auto const f = cyclic_shift_family(4, 4);
    auto const rep = solve_representer(f);
    CHECK(rep.residual <= 1e-10);
    try
    {
        (void)norm_sandwich_check(f, rep);
        FAIL("expected HypothesisViolation");
    }
    catch (Error const& e)
    {
        CHECK(e.code() == Errc::HypothesisViolation);
        CHECK(std::string(e.what()).find("self-adjoint") != std::string::npos);
    }
    auto const audit = norm_sandwich_check(f, rep, kDefaultTol, CheckMode::Audit);
    CHECK_FALSE(audit.asserted);
    CHECK(audit.failed_hypothesis == "self-adjoint");
}

TEST_CASE("constant projection family sits at 1 ≤ 1 ≤ 1")
{
    Gen gen(304);
    auto const space = Subspace::span_of(gen.matrix(5, 2));
    auto const f = constant_family(space, space.projector(), Window::cyclic(3));
    auto const rep = solve_representer(f);
    auto const report = norm_sandwich_check(f, rep);
    CHECK(report.asserted);
    CHECK(report.holds);
    CHECK(report.op_norm == doctest::Approx(1).epsilon(1e-12));
    CHECK(report.upper == doctest::Approx(1).epsilon(1e-12));
    CHECK(report.bounds.lower == doctest::Approx(3).epsilon(1e-12));
    CHECK_FALSE(frame_bounds(f).is_frame());
}

TEST_CASE("permuted diagonal families are not representable")
{
    // Θ_k = diag(d_{σ^k(i)}) with distinct entries: T would have to depend on k.
    int const n = 3;
    Eigen::VectorXd d(n);
    d << 1, 2, 3;
    std::vector<Matrix> thetas;
    for (int k = 0; k < n; ++k)
    {
        Matrix t = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            t(i, i) = d((i + k) % n);
        thetas.push_back(t);
    }
    auto const f = full_family(thetas, Window::cyclic(n));
    CHECK(is_tight(f));
    auto const rep = solve_representer(f);
    CHECK(rep.residual > 1e-3);
    auto const report = norm_sandwich_check(f, rep, kDefaultTol, CheckMode::Audit);
    CHECK(report.failed_hypothesis == "representation");
    CHECK(code_of([&] { (void)kernel_shift_invariance(f, rep); }) == Errc::NotRepresentable);
}

TEST_CASE("truncated windows are audited, never asserted")
{
    // Scalar geometric family d^k: ‖T‖ = d exits the sandwich on a truncated window.
    auto const f = scalar_geometric_family(Matrix::Identity(1, 1), 3.0, Window::truncated(0, 3));
    auto const rep = solve_representer(f);
    auto const report = norm_sandwich_check(f, rep);
    CHECK_FALSE(report.asserted);
    CHECK(report.failed_hypothesis == "cyclic-semantics");
    CHECK(rep.op_norm == doctest::Approx(3));
    CHECK_FALSE(report.holds);
    CHECK(code_of([&] { (void)kernel_shift_invariance(f, rep); })
          == Errc::SemanticsUnsupported);
}

TEST_CASE("property: sandwich holds on representable self-adjoint cyclic families")
{
    Gen gen(305);
    for (int trial = 0; trial < 30; ++trial)
    {
        int const n = gen.integer(1, 6);
        ReflectionFamilyParams p;
        p.n = n;
        p.subspace_dim = gen.integer(1, n);
        p.period = 2 * gen.integer(1, 3);
        p.seed = gen.next();
        p.hi = gen.real(1, 4);
        auto const f = reflection_cyclic_family(p);
        auto const rep = solve_representer(f);
        auto const report = norm_sandwich_check(f, rep);
        CHECK(report.asserted);
        CHECK(report.op_norm >= 1 - 1e-6);
        CHECK(report.op_norm <= report.upper + 1e-6);
        auto const kernel = kernel_shift_invariance(f, rep);
        CHECK(kernel.max_violation <= 1e-8);
    }
}

TEST_CASE("kernel examples")
{
    // Injective members: trivial kernel needs U injective, i.e. one member.
    Gen gen(306);
    auto const lone = constant_family(Subspace::full(2), Matrix::Identity(2, 2), Window::cyclic(1));
    Representer identity{Matrix::Identity(2, 2), 0, 1, 1};
    auto const k0 = kernel_shift_invariance(lone, identity);
    CHECK(k0.kernel_dim == 0);
    CHECK(k0.max_violation == 0);

    auto const pair = constant_family(Subspace::full(1), Matrix::Identity(1, 1), Window::cyclic(2));
    auto const kp = kernel_shift_invariance(pair, solve_representer(pair));
    CHECK(kp.kernel_dim == 1);
    CHECK(kp.max_violation <= 1e-10);

    auto const c3 = cyclic_shift_family(3, 3);
    auto const rep = solve_representer(c3);
    CHECK((rep.T - testing::shift(3)).norm() <= 1e-10);
    auto const kc = kernel_shift_invariance(c3, rep);
    CHECK(kc.kernel_dim == 6);
    CHECK(kc.max_violation <= 1e-9);
    CHECK(brute_force_shift_violation(c3) <= 1e-9);
}

TEST_CASE("property: block-coordinate kernel agrees with brute force")
{
    Gen gen(307);
    for (int trial = 0; trial < 10; ++trial)
    {
        int const n = gen.integer(1, 4);
        auto const f = unitary_power_family(n, gen.integer(2, 5), gen.next(), gen.real(0.5, 2));
        auto const rep = solve_representer(f);
        auto const k = kernel_shift_invariance(f, rep);
        CHECK(k.kernel_dim == nullspace_basis(synthesis_matrix(f)).size());
        CHECK(k.max_violation <= 1e-8);
        CHECK(brute_force_shift_violation(f) <= 1e-8);
    }
}

TEST_CASE("canonical dual of a representable family uses the same T")
{
    Gen gen(308);
    for (int trial = 0; trial < 10; ++trial)
    {
        ReflectionFamilyParams p;
        p.n = gen.integer(1, 5);
        p.subspace_dim = p.n;
        p.period = 4;
        p.seed = gen.next();
        auto const f = reflection_cyclic_family(p);
        auto const rep = solve_representer(f);
        auto const dual = solve_representer(canonical_dual(f).family());
        CHECK(dual.residual <= 1e-9);
        CHECK((dual.T - rep.T).norm() <= 1e-8 * rep.T.norm());
    }
}

TEST_CASE("obstruction scan on the identity fixture")
{
    std::vector<int> ks{4, 8, 16};
    auto const scan = invertibility_obstruction_scan(
        [](int k) { return identity_scan_fixture(2, k); }, ks);
    REQUIRE(scan.rows.size() == 3);
    CHECK(scan.rows[0].upper == doctest::Approx(9));
    CHECK(scan.rows[1].upper == doctest::Approx(17));
    CHECK(scan.rows[2].upper == doctest::Approx(33));
    CHECK(scan.rows[2].ratio == doctest::Approx(33.0 / 9.0));
    CHECK(scan.slope == doctest::Approx(1).epsilon(1e-12));
    CHECK(scan.passed());
}

TEST_CASE("obstruction scan on reflections and shifts")
{
    std::vector<int> ks{4, 8, 16, 32};
    auto const refl = invertibility_obstruction_scan(
        [](int k) { return reflection_scan_fixture(3, k, 17); }, ks);
    CHECK(refl.passed());
    CHECK(refl.max_rel_error <= 1e-9);
    auto const shifts = invertibility_obstruction_scan(
        [](int k) { return example_53_scan_fixture(5, k, 2); }, ks);
    CHECK(shifts.passed());
    CHECK(shifts.max_rel_error <= 1e-9);
}

TEST_CASE("obstruction scan rejects bad generators")
{
    std::vector<int> ks{1, 2};
    CHECK(code_of([&] {
              (void)invertibility_obstruction_scan(
                  [](int k) {
                      auto fx = identity_scan_fixture(2, k);
                      fx.candidate *= 2.0;
                      return fx;
                  },
                  ks);
          })
          == Errc::GeneratorViolation);
    CHECK(code_of([&] {
              (void)invertibility_obstruction_scan(
                  [](int k) {
                      ShiftFamilyParams p;
                      p.n = 7;
                      p.half_width = k;
                      return ScanFixture{example_51_family(p), testing::shift(7)};
                  },
                  ks);
          })
          == Errc::GeneratorViolation);
    std::vector<int> one{3};
    CHECK(code_of([&] {
              (void)invertibility_obstruction_scan(
                  [](int k) { return identity_scan_fixture(2, k); }, one);
          })
          == Errc::Usage);
}
}
