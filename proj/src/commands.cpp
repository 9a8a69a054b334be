#include "gfusion/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfusion/error.hpp"
#include "gfusion/fixtures.hpp"
#include "gfusion/frame.hpp"
#include "gfusion/frame_file.hpp"
#include "gfusion/perturbation.hpp"
#include "gfusion/representation.hpp"

namespace gfusion
{
namespace
{
constexpr double kReconstructionTol = 1e-8;
constexpr double kKernelTol = 1e-8;

Json bounds_json(FrameBounds const& b)
{
    return {{"lower", b.lower}, {"upper", b.upper}};
}

Json matrix_json(Matrix const& m)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_json(Vector const& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

char const* semantics_name(Semantics s)
{
    return s == Semantics::Cyclic ? "cyclic" : "truncated";
}

Json family_summary(FrameFamily const& family)
{
    return {{"dim", family.dim()},
            {"members", family.size()},
            {"semantics", semantics_name(family.semantics())},
            {"k_min", family.window().k_min},
            {"k_max", family.window().k_max}};
}

Json global_json(GlobalOptions const& global)
{
    return {{"tol", global.tol}, {"seed", global.seed}};
}
}  // namespace

//---------------------------------------------------------------------------//
Report cmd_analyze(std::string const& path, GlobalOptions const& global)
{
    auto const family = load_frame_file(path);

    Report report;
    report.command = "analyze";
    report.inputs = global_json(global);
    report.inputs["file"] = path;

    auto const bounds = frame_bounds(family);
    auto& r = report.results;
    r["family"] = family_summary(family);
    r["bounds"] = bounds_json(bounds);
    r["bounds_on_span"] = bounds_json(frame_bounds_on_span(family));
    r["is_frame"] = bounds.is_frame();
    if (bounds.is_frame())
    {
        r["condition_ratio"] = bounds.lower / bounds.upper;
        r["tight"] = is_tight(family, global.tol);
    }
    else
    {
        r["tight"] = false;
    }

    auto const structure = validate_structure(family, {}, global.tol);
    Json failing = Json::object();
    auto collect = [&](char const* name, auto flag) {
        Json ks = Json::array();
        for (auto const& m : structure.members)
        {
            if (!(m.*flag))
            {
                ks.push_back(m.k);
            }
        }
        failing[name] = std::move(ks);
    };
    collect("range_contained", &MemberValidation::range_contained);
    collect("self_adjoint", &MemberValidation::self_adjoint);
    collect("onto_subspace", &MemberValidation::onto_subspace);
    collect("projection", &MemberValidation::projection);
    r["structure"] = {{"range_contained", structure.all_range_contained()},
                      {"self_adjoint", structure.all_self_adjoint()},
                      {"onto_subspace", structure.all_onto_subspace()},
                      {"projection", structure.all_projections()},
                      {"failing_indices", std::move(failing)}};

    if (bounds.is_frame())
    {
        auto const dual = canonical_dual(family);
        auto const probes = probe_vectors(family.dim(), kProbeCount, global.seed);
        double const error = reconstruction_error(family, dual, probes);
        r["reconstruction_error"] = error;
        report.add_verdict("reconstruction", error <= kReconstructionTol, error,
                           kReconstructionTol);
    }
    else
    {
        r["reconstruction_error"] = nullptr;
    }
    return report;
}

//---------------------------------------------------------------------------//
Report cmd_represent(std::string const& path,
                     RepresentOptions const& options,
                     GlobalOptions const& global)
{
    auto const family = load_frame_file(path);
    auto const rep = solve_representer(family);

    Report report;
    report.command = "represent";
    report.inputs = global_json(global);
    report.inputs["file"] = path;
    report.inputs["assert_sandwich"] = options.assert_sandwich;

    auto& r = report.results;
    r["family"] = family_summary(family);
    r["residual"] = rep.residual;
    r["representable"] = rep.residual <= global.tol;
    r["op_norm"] = rep.op_norm;
    r["min_singular"] = rep.min_singular;
    r["representer"] = matrix_json(rep.T);

    auto const sandwich
        = norm_sandwich_check(family, rep, global.tol, CheckMode::Audit);
    r["bounds_on_span"] = bounds_json(sandwich.bounds);
    r["sqrt_bound_ratio"] = sandwich.upper;
    Json s = {{"lower", sandwich.lower},
              {"op_norm", sandwich.op_norm},
              {"upper", sandwich.upper},
              {"holds", sandwich.holds},
              {"hypotheses_hold", sandwich.asserted}};
    if (sandwich.failed_hypothesis)
    {
        s["failed_hypothesis"] = *sandwich.failed_hypothesis;
    }
    r["sandwich"] = std::move(s);

    std::optional<ShiftInvarianceReport> kernel;
    if (family.semantics() == Semantics::Cyclic && rep.residual <= global.tol)
    {
        kernel = kernel_shift_invariance(family, rep, global.tol);
        r["kernel"] = {{"dim", kernel->kernel_dim},
                       {"max_violation", kernel->max_violation}};
    }
    else
    {
        r["kernel"] = {{"skipped", family.semantics() == Semantics::Cyclic
                                       ? "not representable at tolerance"
                                       : "truncated window"}};
    }

    if (options.assert_sandwich)
    {
        if (sandwich.asserted)
        {
            report.add_verdict("norm_sandwich", sandwich.holds, sandwich.op_norm,
                               sandwich.upper);
            if (kernel)
            {
                report.add_verdict("kernel_shift_invariance",
                                   kernel->max_violation <= kKernelTol,
                                   kernel->max_violation, kKernelTol);
            }
        }
        else
        {
            r["sandwich_refused"] = sandwich.failed_hypothesis.value_or("unknown");
        }
    }
    return report;
}

//---------------------------------------------------------------------------//
Report cmd_perturb(std::string const& path_a,
                   std::string const& path_b,
                   PerturbOptions const& options,
                   GlobalOptions const& global)
{
    auto const base = load_frame_file(path_a);
    auto const perturbed = load_frame_file(path_b);
    PerturbationParams const params(options.alpha, options.beta);

    Report report;
    report.command = "perturb";
    report.inputs = global_json(global);
    report.inputs["file_a"] = path_a;
    report.inputs["file_b"] = path_b;
    report.inputs["alpha"] = params.alpha();
    report.inputs["beta"] = params.beta();
    report.inputs["samples"] = options.samples;

    auto const condition
        = check_condition(base, perturbed, params, options.samples, global.seed);
    auto& r = report.results;
    bool const passed = condition.verdict == ConditionVerdict::PassedSampled;
    r["condition"] = passed ? "passed_sampled" : "violated_witness";
    r["probes_evaluated"] = condition.probes_evaluated;
    r["base_bounds"] = bounds_json(frame_bounds(base));
    r["min_alpha_lower_bound"]
        = estimate_min_alpha(base, perturbed, options.samples, global.seed);

    if (!passed)
    {
        auto const& w = *condition.witness;
        Json coefficients = Json::array();
        for (auto const& c : w.coefficients)
        {
            coefficients.push_back({c.real(), c.imag()});
        }
        r["witness"] = {{"coefficients", std::move(coefficients)},
                        {"f", vector_json(w.f)},
                        {"lhs", w.lhs},
                        {"rhs", w.rhs}};
        report.add_verdict("condition", false, w.lhs, w.rhs);
        return report;
    }

    report.add_verdict("condition", true, condition.max_excess, 0);
    auto const check = verify_perturbed_frame(base, perturbed, condition, global.tol);
    r["theoretical_bounds"] = bounds_json(check.theoretical_bounds);
    r["computed_bounds"] = bounds_json(check.computed_bounds);
    report.add_verdict("lower_bound", check.lower_holds, check.computed_bounds.lower,
                       check.theoretical_bounds.lower);
    report.add_verdict("upper_bound", check.upper_holds, check.computed_bounds.upper,
                       check.theoretical_bounds.upper);
    return report;
}

//---------------------------------------------------------------------------//
std::vector<std::string> scan_fixture_names()
{
    return {"identity", "reflection", "example53"};
}

Report cmd_scan(ScanOptions const& options, GlobalOptions const& global)
{
    if (options.windows.empty())
    {
        fail(Errc::Usage, "scan needs a non-empty --windows list");
    }
    FamilyGenerator generator;
    if (options.fixture == "identity")
    {
        generator = [n = options.n](int k) { return identity_scan_fixture(n, k); };
    }
    else if (options.fixture == "reflection")
    {
        generator = [n = options.n, seed = global.seed](int k) {
            return reflection_scan_fixture(n, k, seed);
        };
    }
    else if (options.fixture == "example53")
    {
        generator = [n = options.n, x0 = options.x0](int k) {
            return example_53_scan_fixture(n, k, x0);
        };
    }
    else
    {
        fail(Errc::UnknownFixture, "no scan fixture named '" + options.fixture + "'");
    }

    auto const scan = invertibility_obstruction_scan(generator, options.windows);

    Report report;
    report.command = "scan";
    report.inputs = global_json(global);
    report.inputs["fixture"] = options.fixture;
    report.inputs["windows"] = options.windows;
    report.inputs["dim"] = options.n;
    report.inputs["x0"] = options.x0;

    report.results["slope"] = scan.slope;
    report.results["max_rel_error"] = scan.max_rel_error;
    report.results["max_ratio_deviation"] = scan.max_ratio_deviation;
    report.table_header = {"K", "members", "B", "predicted", "rel_error", "ratio",
                           "expected_ratio"};
    for (auto const& row : scan.rows)
    {
        report.table_rows.push_back({static_cast<double>(row.half_width),
                                     static_cast<double>(row.members), row.upper,
                                     row.predicted, row.rel_error, row.ratio,
                                     row.expected_ratio});
    }
    report.add_verdict("ratio_growth", scan.ratios_within_tolerance,
                       scan.max_ratio_deviation, kGrowthTol);
    report.add_verdict("growth_slope", scan.slope_within_tolerance,
                       std::abs(scan.slope - 1), kGrowthTol);
    return report;
}

//---------------------------------------------------------------------------//
std::vector<std::string> frame_fixture_names()
{
    return {"example51",  "example53",     "self-adjoint", "reflection",
            "unitary-power", "cyclic-shift", "identity",     "projection",
            "random"};
}

std::string cmd_fixture(FixtureOptions const& o, GlobalOptions const& global)
{
    auto const window = o.cyclic ? Window::cyclic(o.period)
                                 : Window::truncated(0, o.period - 1);
    if (o.name == "example51")
    {
        ShiftFamilyParams p;
        p.n = o.n;
        p.half_width = o.half_width;
        p.base_element = o.base_element;
        p.decay = o.decay;
        p.one_sided = o.one_sided;
        p.allow_repeated_shifts = o.allow_repeated_shifts;
        return format_frame_file(example_51_family(p));
    }
    if (o.name == "example53")
    {
        return format_frame_file(example_53_family(o.n, o.half_width, o.base_element));
    }
    if (o.name == "self-adjoint")
    {
        SelfAdjointFamilyParams p;
        p.n = o.n;
        p.window = window;
        p.seed = global.seed;
        p.lo = o.lo;
        p.hi = o.hi;
        p.full_space = o.full_space;
        return format_frame_file(random_self_adjoint_family(p));
    }
    if (o.name == "reflection")
    {
        ReflectionFamilyParams p;
        p.n = o.n;
        p.subspace_dim = o.subspace_dim > 0 ? o.subspace_dim : o.n;
        p.period = o.period;
        p.seed = global.seed;
        p.lo = o.lo;
        p.hi = o.hi;
        return format_frame_file(reflection_cyclic_family(p));
    }
    if (o.name == "unitary-power")
    {
        return format_frame_file(unitary_power_family(o.n, o.period, global.seed, o.scale));
    }
    if (o.name == "cyclic-shift")
    {
        return format_frame_file(cyclic_shift_family(o.n, o.period, o.scale));
    }
    if (o.name == "identity")
    {
        return format_frame_file(constant_family(
            Subspace::full(o.n), o.scale * Matrix::Identity(o.n, o.n),
            Window::truncated(-o.half_width, o.half_width)));
    }
    if (o.name == "projection")
    {
        Rng rng(global.seed);
        int const d = o.subspace_dim > 0 ? o.subspace_dim : std::max(1, o.n / 2);
        if (d > o.n)
        {
            fail(Errc::InvalidRange, "subspace dimension exceeds n");
        }
        auto const space = Subspace::from_basis(rng.unitary(o.n).leftCols(d));
        return format_frame_file(constant_family(space, space.projector(), window));
    }
    if (o.name == "random")
    {
        Rng rng(global.seed);
        std::vector<Matrix> thetas;
        for (int i = 0; i < window.size(); ++i)
        {
            thetas.emplace_back(rng.gaussian_matrix(o.n, o.n));
        }
        auto const space = Subspace::full(o.n);
        std::vector<Member> members;
        for (int i = 0; i < window.size(); ++i)
        {
            members.push_back({window.k_min + i, space, std::move(thetas[i])});
        }
        return format_frame_file(FrameFamily(window, std::move(members)));
    }
    fail(Errc::UnknownFixture, "no fixture named '" + o.name + "'");
}

}  // namespace gfusion
