#include <doctest.h>

#include <cmath>

#include "gfusion/error.hpp"
#include "gfusion/fixtures.hpp"
#include "gfusion/frame.hpp"
#include "gfusion/random.hpp"
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

FrameFamily truncated_family(std::vector<Matrix> thetas)
{
    int const last = static_cast<int>(thetas.size()) - 1;
    return full_family(std::move(thetas), Window::truncated(0, last));
}

Matrix scalar(double x)
{
    return Matrix::Constant(1, 1, x);
}

// Random family on random subspaces; zero members allowed (but not all zero).
FrameFamily random_family(Gen& gen, int n, int count)
{
    std::vector<Member> members;
    for (int k = 0; k < count; ++k)
    {
        int const d = gen.integer(1, n);
        auto const space = Subspace::span_of(gen.matrix(n, d));
        Matrix theta = space.projector() * gen.matrix(n, n);
        if (k > 0 && gen.unit() < 0.15)
            theta.setZero();
        members.push_back({k, space, theta});
    }
    return FrameFamily(Window::truncated(0, count - 1), std::move(members));
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
}  // namespace

TEST_SUITE("frame_core")
{
TEST_CASE("subspace validation")
{
    CHECK(Subspace::full(3).dim() == 3);
    Matrix bad(2, 1);
    bad << 1, 1;
    CHECK(code_of([&] { (void)Subspace::from_basis(bad); }) == Errc::InvalidSubspace);
    auto const s = Subspace::span_of(bad);
    CHECK(s.dim() == 1);
    CHECK((s.projector() * s.projector() - s.projector()).norm() <= 1e-14);
    Vector v(2);
    v << 2, 2;
    CHECK(s.contains(v));
    v << 1, -1;
    CHECK_FALSE(s.contains(v));
}

TEST_CASE("family invariants are enforced")
{
    auto const full = Subspace::full(2);
    Matrix e1 = Matrix::Zero(2, 1);
    e1(0) = 1;
    auto const line = Subspace::from_basis(e1);

    // Range outside M_k.
    CHECK(code_of([&] {
              FrameFamily(Window::truncated(0, 0), {{0, line, Matrix::Identity(2, 2)}});
          })
          == Errc::InvalidFamily);
    // All-zero family.
    CHECK(code_of([&] {
              FrameFamily(Window::truncated(0, 0), {{0, full, Matrix::Zero(2, 2)}});
          })
          == Errc::InvalidFamily);
    // Gap in indices.
    CHECK(code_of([&] {
              FrameFamily(Window::truncated(0, 1), {{0, full, Matrix::Identity(2, 2)},
                                                    {2, full, Matrix::Identity(2, 2)}});
          })
          == Errc::InvalidFamily);
    // Mismatched dimensions.
    CHECK(code_of([&] {
              FrameFamily(Window::truncated(0, 1),
                          {{0, full, Matrix::Identity(2, 2)},
                           {1, Subspace::full(3), Matrix::Identity(3, 3)}});
          })
          == Errc::InvalidFamily);
    // Members supplied out of order are sorted.
    FrameFamily f(Window::truncated(-1, 0), {{0, full, 2.0 * Matrix::Identity(2, 2)},
                                             {-1, full, Matrix::Identity(2, 2)}});
    CHECK(f[0].k == -1);
    CHECK(f.at_index(0).theta(0, 0) == Complex(2));
    CHECK(code_of([&] { (void)f.at_index(3); }) == Errc::IndexOutOfWindow);

    auto const cyc = cyclic_shift_family(3, 3);
    CHECK(cyc.at_index(4).k == 1);
    CHECK(cyc.at_index(-1).k == 2);
}

TEST_CASE("frame operator examples")
{
    auto const single = truncated_family({Matrix::Identity(2, 2)});
    CHECK((frame_operator(single) - Matrix::Identity(2, 2)).norm() <= 1e-15);

    auto const cyc = cyclic_shift_family(3, 3);
    CHECK((frame_operator(cyc) - 3.0 * Matrix::Identity(3, 3)).norm() <= 1e-14);

    auto const pair = truncated_family({scalar(1), scalar(2)});
    CHECK(frame_operator(pair)(0, 0).real() == doctest::Approx(5));
}

TEST_CASE("frame bounds examples")
{
    Matrix d = Matrix::Identity(2, 2);
    d(0, 0) = 2;
    auto const f = truncated_family({Matrix::Identity(2, 2), d});
    auto const b = frame_bounds(f);
    CHECK(b.lower == doctest::Approx(2));
    CHECK(b.upper == doctest::Approx(5));
    CHECK(b.is_frame());
    CHECK_FALSE(is_tight(f));

    CHECK(is_tight(cyclic_shift_family(4, 4)));

    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1;
    auto const deficient = truncated_family({p});
    CHECK_FALSE(frame_bounds(deficient).is_frame());
    CHECK(frame_bounds(deficient).lower == 0);
    CHECK(code_of([&] { (void)is_tight(deficient); }) == Errc::NotAFrame);

    // Zero-augmented tight family stays tight.
    auto const aug = truncated_family({Matrix::Identity(2, 2), Matrix::Zero(2, 2)});
    CHECK(is_tight(aug));
}

TEST_CASE("analysis and synthesis examples")
{
    auto const c = testing::shift(3);
    auto const f = truncated_family({Matrix::Identity(3, 3), 0.5 * c, 0.25 * c * c});
    Vector e1 = Vector::Zero(3);
    e1(0) = 1;
    auto const images = analysis(f, e1);
    CHECK((images[0] - e1).norm() <= 1e-15);
    CHECK(std::abs(images[1](1) - 0.5) <= 1e-15);
    CHECK(std::abs(images[2](2) - 0.25) <= 1e-15);
    for (auto const& v : analysis(f, Vector::Zero(3)))
        CHECK(v.norm() == 0);
    CHECK(code_of([&] { (void)analysis(f, Vector::Zero(2)); }) == Errc::DimMismatch);

    std::vector<Vector> zeros(3, Vector::Zero(3));
    CHECK(synthesis(f, zeros).norm() == 0);
    std::vector<Vector> two(2, Vector::Zero(3));
    CHECK(code_of([&] { (void)synthesis(f, two); }) == Errc::BlockCountMismatch);

    auto const pair = truncated_family({scalar(1), scalar(2)});
    Matrix u = synthesis_matrix(pair);
    CHECK(u.cols() == 2);
    CHECK(u(0, 0) == Complex(1));
    CHECK(u(0, 1) == Complex(2));

    auto const cc = truncated_family({c, c * c});
    Matrix const uc = synthesis_matrix(cc);
    CHECK((uc.leftCols(3) - c.transpose()).norm() == 0);
    CHECK((uc.rightCols(3) - (c * c).transpose()).norm() == 0);
}

TEST_CASE("synthesis rejects blocks outside their subspace")
{
    Matrix e1 = Matrix::Zero(2, 1);
    e1(0) = 1;
    auto const line = Subspace::from_basis(e1);
    Matrix theta = Matrix::Zero(2, 2);
    theta(0, 0) = 1;
    FrameFamily f(Window::truncated(0, 0), {{0, line, theta}});
    Vector off(2);
    off << 0, 1;
    std::vector<Vector> blocks{off};
    CHECK(code_of([&] { (void)synthesis(f, blocks); }) == Errc::BlockOutOfSubspace);
}

TEST_CASE("canonical dual examples")
{
    auto const cyc = cyclic_shift_family(3, 3);
    auto const dual = canonical_dual(cyc);
    for (std::size_t i = 0; i < cyc.size(); ++i)
        CHECK((dual.family()[i].theta - cyc[i].theta / 3.0).norm() <= 1e-14);

    auto const single = truncated_family({Matrix::Identity(2, 2)});
    CHECK((canonical_dual(single).family()[0].theta - Matrix::Identity(2, 2)).norm()
          <= 1e-15);

    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1;
    CHECK(code_of([&] { (void)canonical_dual(truncated_family({p})); }) == Errc::NotAFrame);
}

TEST_CASE("reconstruct with a non-dual applies the frame operator")
{
    Matrix d = Matrix::Identity(2, 2);
    d(1, 1) = 3;
    auto const f = truncated_family({Matrix::Identity(2, 2), d});
    DualFamily const self(f);
    Gen gen(201);
    Vector const v = gen.vector(2);
    CHECK((reconstruct(f, self, v) - frame_operator(f) * v).norm() <= 1e-14);
    CHECK(reconstruct(f, canonical_dual(f), Vector::Zero(2)).norm() == 0);
}

TEST_CASE("structure validation examples")
{
    Gen gen(202);
    std::vector<Member> members;
    for (int k = 0; k < 3; ++k)
    {
        auto const s = Subspace::span_of(gen.matrix(4, gen.integer(1, 4)));
        members.push_back({k, s, s.projector()});
    }
    FrameFamily projections(Window::truncated(0, 2), members);
    auto const r = validate_structure(projections, {true, true, true});
    CHECK(r.passed());
    CHECK(r.all_projections());

    ShiftFamilyParams p;
    p.n = 5;
    p.half_width = 2;
    auto const shifts = example_51_family(p);
    auto const s = validate_structure(shifts, {.self_adjoint = true});
    CHECK_FALSE(s.passed());
    CHECK(s.first_failure() == "self-adjoint");
    for (auto const& m : s.members)
        CHECK(m.self_adjoint == (m.k == 0));

    Matrix e1 = Matrix::Zero(2, 1);
    e1(0) = 1;
    Matrix theta = Matrix::Zero(2, 2);
    theta(0, 0) = 1;
    FrameFamily diag(Window::truncated(0, 0), {{0, Subspace::from_basis(e1), theta}});
    auto const dr = validate_structure(diag, {.onto_subspace = true});
    CHECK(dr.members[0].range_contained);
    CHECK(dr.members[0].onto_subspace);
}

TEST_CASE("weighted fusion frames")
{
    std::vector<Subspace> one{Subspace::full(3)};
    std::vector<double> w1{1};
    auto const f = weighted_fusion_frame(one, w1);
    CHECK((f[0].theta - Matrix::Identity(3, 3)).norm() <= 1e-15);

    std::vector<Subspace> axes;
    for (int k = 0; k < 4; ++k)
    {
        Matrix e = Matrix::Zero(4, 1);
        e(k) = 1;
        axes.push_back(Subspace::from_basis(e));
    }
    std::vector<double> ones(4, 1.0);
    auto const axis_frame = weighted_fusion_frame(axes, ones, 1);
    CHECK(axis_frame.window().k_min == 1);
    auto const b = frame_bounds(axis_frame);
    CHECK(b.lower == doctest::Approx(1));
    CHECK(b.upper == doctest::Approx(1));

    std::vector<Subspace> twice{Subspace::full(2), Subspace::full(2)};
    std::vector<double> w12{1, 2};
    auto const five = frame_bounds(weighted_fusion_frame(twice, w12));
    CHECK(five.lower == doctest::Approx(5));
    CHECK(five.upper == doctest::Approx(5));

    std::vector<double> neg{1, 0};
    CHECK(code_of([&] { (void)weighted_fusion_frame(twice, neg); })
          == Errc::NonPositiveWeight);
}

TEST_CASE("property: optimal bounds sandwich every Rayleigh quotient")
{
    Gen gen(203);
    for (int trial = 0; trial < 40; ++trial)
    {
        int const n = gen.integer(1, 5);
        auto const f = random_family(gen, n, gen.integer(1, 5));
        auto const b = frame_bounds(f);
        // Power iteration is an independent route to λ_max(S).
        CHECK(b.upper == doctest::Approx(testing::power_iteration(frame_operator(f))).epsilon(1e-6));
        for (int p = 0; p < 10; ++p)
        {
            Vector const v = gen.vector(n);
            double energy = 0;
            for (auto const& m : f.members())
                energy += (m.theta * v).squaredNorm();
            CHECK(std::abs(energy - analysis_energy(f, v)) <= 1e-12 * (energy + 1));
            double const q = energy / v.squaredNorm();
            CHECK(q >= b.lower * (1 - 1e-10) - 1e-12 * b.upper);
            CHECK(q <= b.upper * (1 + 1e-10));
        }
    }
}

TEST_CASE("property: synthesis of analysis equals the frame operator")
{
    Gen gen(204);
    for (int trial = 0; trial < 30; ++trial)
    {
        int const n = gen.integer(1, 5);
        auto const f = random_family(gen, n, gen.integer(1, 5));
        Vector const v = gen.vector(n);
        auto const blocks = analysis(f, v);
        Vector const s = frame_operator(f) * v;
        CHECK((synthesis(f, blocks) - s).norm() <= 1e-10 * (s.norm() + 1));
        Vector stacked(n * static_cast<int>(f.size()));
        for (std::size_t i = 0; i < blocks.size(); ++i)
            stacked.segment(static_cast<Eigen::Index>(i) * n, n) = blocks[i];
        CHECK((synthesis_matrix(f) * stacked - s).norm() <= 1e-10 * (s.norm() + 1));
    }
}

TEST_CASE("property: canonical dual reconstructs well-conditioned frames")
{
    Gen gen(205);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial)
    {
        int const n = gen.integer(1, 5);
        auto const f = random_family(gen, n, gen.integer(1, 6));
        auto const b = frame_bounds(f);
        if (!(b.lower / b.upper > 1e-6))
            continue;
        ++checked;
        auto const dual = canonical_dual(f);
        auto const probes = probe_vectors(n, kProbeCount, kDefaultSeed);
        CHECK(reconstruction_error(f, dual, probes) <= 1e-8);
    }
    CHECK(checked >= 10);
}

TEST_CASE("property: appending a zero member changes neither bounds nor reconstruction")
{
    Gen gen(206);
    for (int trial = 0; trial < 20; ++trial)
    {
        int const n = gen.integer(1, 4);
        int const count = gen.integer(1, 4);
        auto const f = random_family(gen, n, count);
        auto members = std::vector<Member>(f.members().begin(), f.members().end());
        members.push_back({count, Subspace::full(n), Matrix::Zero(n, n)});
        FrameFamily const g(Window::truncated(0, count), members);
        auto const bf = frame_bounds(f), bg = frame_bounds(g);
        CHECK(bf.lower == bg.lower);
        CHECK(bf.upper == bg.upper);
        if (bf.lower / bf.upper > 1e-6)
        {
            auto const probes = probe_vectors(n, 20, 9);
            CHECK(reconstruction_error(g, canonical_dual(g), probes) <= 1e-8);
        }
    }
}

TEST_CASE("property: bounds are invariant under a common unitary change of basis")
{
    Gen gen(207);
    for (int trial = 0; trial < 20; ++trial)
    {
        int const n = gen.integer(1, 5);
        auto const f = random_family(gen, n, gen.integer(1, 5));
        Matrix const v = Rng(gen.next()).unitary(n);
        std::vector<Matrix> thetas;
        for (auto const& m : f.members())
            thetas.push_back(m.theta * v);
        auto const g = f.with_operators(thetas);
        auto const bf = frame_bounds(f), bg = frame_bounds(g);
        CHECK(std::abs(bf.lower - bg.lower) <= 1e-10 * bf.upper);
        CHECK(std::abs(bf.upper - bg.upper) <= 1e-10 * bf.upper);
    }
}

TEST_CASE("window semantics")
{
    auto const t = Window::truncated(-2, 1);
    CHECK(t.size() == 4);
    CHECK(t.successor_pairs().size() == 3);
    auto const c = Window::cyclic(4);
    auto const pairs = c.successor_pairs();
    REQUIRE(pairs.size() == 4);
    CHECK(pairs.back().first == 3);
    CHECK(pairs.back().second == 0);
    CHECK(c.position(-1) == std::optional<std::size_t>(3));
    CHECK_FALSE(t.position(5).has_value());
}
}
