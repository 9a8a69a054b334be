#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gfusion/commands.hpp"
#include "gfusion/error.hpp"
#include "gfusion/frame_file.hpp"

namespace
{
enum Exit
{
    kOk = 0,
    kInputError = 1,
    kVerdictFailed = 2,
};

void emit(std::string const& text, std::string const& output)
{
    if (output.empty())
    {
        std::cout << text;
    }
    else
    {
        gfusion::write_file_atomic(output, text);
    }
}
}  // namespace

int main(int argc, char** argv)
{
    using namespace gfusion;

    CLI::App app{"gfusion: g-fusion frame laboratory"};
    app.require_subcommand(1);

    GlobalOptions global;
    std::string format = "json";
    std::string output;
    app.add_option("--tol", global.tol, "numerical tolerance")
        ->capture_default_str();
    app.add_option("--seed", global.seed, "random seed")->capture_default_str();
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", output, "write output here instead of stdout");

    std::string file_a;
    std::string file_b;

    auto* analyze = app.add_subcommand("analyze", "frame bounds, tightness, structure");
    analyze->fallthrough();
    analyze->add_option("file", file_a, "FrameFile")->required();

    RepresentOptions represent_opts;
    auto* represent = app.add_subcommand("represent", "solve for the representer T");
    represent->fallthrough();
    represent->add_option("file", file_a, "FrameFile")->required();
    represent->add_flag("--assert-sandwich", represent_opts.assert_sandwich,
                        "assert the norm sandwich when its hypotheses hold");

    PerturbOptions perturb_opts;
    auto* perturb = app.add_subcommand("perturb", "perturbation condition and bounds");
    perturb->fallthrough();
    perturb->add_option("file_a", file_a, "base FrameFile")->required();
    perturb->add_option("file_b", file_b, "perturbed FrameFile")->required();
    perturb->add_option("--alpha", perturb_opts.alpha)->required();
    perturb->add_option("--beta", perturb_opts.beta)->capture_default_str();
    perturb->add_option("--samples", perturb_opts.samples)->capture_default_str();

    ScanOptions scan_opts;
    auto* scan = app.add_subcommand("scan", "window-growth scan of the upper bound");
    scan->fallthrough();
    scan->add_option("--fixture", scan_opts.fixture)->capture_default_str();
    scan->add_option("--windows", scan_opts.windows, "half-widths K")
        ->delimiter(',');
    scan->add_option("--dim", scan_opts.n)->capture_default_str();
    scan->add_option("--x0", scan_opts.x0)->capture_default_str();

    FixtureOptions fix;
    bool truncated = false;
    auto* fixture = app.add_subcommand("fixture", "write a generated FrameFile");
    fixture->fallthrough();
    fixture->add_option("name", fix.name, "generator name")->required();
    fixture->add_option("--n", fix.n)->capture_default_str();
    fixture->add_option("--half-width", fix.half_width)->capture_default_str();
    fixture->add_option("--base-element", fix.base_element)->capture_default_str();
    fixture->add_option("--decay", fix.decay)->capture_default_str();
    fixture->add_flag("--one-sided", fix.one_sided);
    fixture->add_flag("--allow-repeated-shifts", fix.allow_repeated_shifts);
    fixture->add_option("--period", fix.period)->capture_default_str();
    fixture->add_option("--subspace-dim", fix.subspace_dim);
    fixture->add_option("--lo", fix.lo)->capture_default_str();
    fixture->add_option("--hi", fix.hi)->capture_default_str();
    fixture->add_option("--scale", fix.scale)->capture_default_str();
    fixture->add_flag("--truncated", truncated, "truncated window 0..period-1");
    fixture->add_flag("--full-space", fix.full_space);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try
    {
        if (fixture->parsed())
        {
            fix.cyclic = !truncated;
            emit(cmd_fixture(fix, global), output);
            return kOk;
        }

        Report report;
        if (analyze->parsed())
        {
            report = cmd_analyze(file_a, global);
        }
        else if (represent->parsed())
        {
            report = cmd_represent(file_a, represent_opts, global);
            if (auto it = report.results.find("sandwich_refused");
                it != report.results.end())
            {
                std::cerr << "gfusion: sandwich not asserted, hypothesis failed: "
                          << it->get<std::string>() << '\n';
            }
        }
        else if (perturb->parsed())
        {
            report = cmd_perturb(file_a, file_b, perturb_opts, global);
        }
        else if (scan->parsed())
        {
            report = cmd_scan(scan_opts, global);
        }
        emit(format == "csv" ? report.to_csv() : report.to_json_string(), output);
        return report.all_pass() ? kOk : kVerdictFailed;
    }
    catch (Error const& e)
    {
        std::cerr << "gfusion: " << e.what() << '\n';
        return kInputError;
    }
    catch (std::exception const& e)
    {
        std::cerr << "gfusion: " << e.what() << '\n';
        return kInputError;
    }
}
