#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "random.hpp"
#include "report.hpp"

namespace gfusion
{

struct GlobalOptions
{
    double tol = 1e-9;
    std::uint64_t seed = kDefaultSeed;
};

Report cmd_analyze(std::string const& path, GlobalOptions const& global);

struct RepresentOptions
{
    bool assert_sandwich = false;
};

Report cmd_represent(std::string const& path,
                     RepresentOptions const& options,
                     GlobalOptions const& global);

struct PerturbOptions
{
    double alpha = 0;
    double beta = 0;
    int samples = 100;
};

Report cmd_perturb(std::string const& path_a,
                   std::string const& path_b,
                   PerturbOptions const& options,
                   GlobalOptions const& global);

struct ScanOptions
{
    std::string fixture = "identity";
    std::vector<int> windows;
    int n = 2;
    int x0 = 1;
};

//! Registered scan fixtures: identity, reflection, example53.
std::vector<std::string> scan_fixture_names();

Report cmd_scan(ScanOptions const& options, GlobalOptions const& global);

struct FixtureOptions
{
    std::string name;
    int n = 16;
    int half_width = 8;
    int base_element = 1;
    double decay = 0.5;
    bool one_sided = false;
    bool allow_repeated_shifts = false;
    int period = 4;
    int subspace_dim = 0;  //!< 0: full space
    double lo = 1;
    double hi = 2;
    double scale = 1;
    bool cyclic = true;
    bool full_space = false;
};

//! Registered generators for the `fixture` subcommand.
std::vector<std::string> frame_fixture_names();

//! Builds the named fixture and returns its canonical FrameFile text.
std::string cmd_fixture(FixtureOptions const& options,
                        GlobalOptions const& global);

}  // namespace gfusion
