#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctlink/paving.hpp"
#include "ctlink/serialize.hpp"

namespace ctlink::cli
{

// Numeric defaults. Each is overridable by a flag or by the environment
// variable named alongside; a flag wins over the environment.
struct Defaults
{
    static constexpr const char* env_prefix = "CTLINK_";
    static constexpr double tol = 1e-9;                // CTLINK_TOL
    static constexpr int quad_depth = 8;               // CTLINK_QUAD_DEPTH
    static constexpr std::size_t cap = 10'000'000;     // CTLINK_CAP
};

struct Stages
{
    bool paving = true;
    bool cooper_thurston = true;
    bool systole = false;
    bool link = false;
    bool certificate = false;
    bool polyhedron = false;
    bool volume = false;

    static Stages all() { return {true, true, true, true, true, true, true}; }
};

struct PipelineOptions
{
    Stages stages;
    double tol = Defaults::tol;
    int quad_depth = Defaults::quad_depth;
    std::size_t cap = Defaults::cap;
    bool assert_abelian_pi1 = false;
    // Systole search sources; empty means every barycenter.
    std::vector<int> sources;
};

/// Runs the requested stages in dependency order on a paving.
RunReport run_pipeline(const Paving& paving, const Json& inputs, const PipelineOptions& options);

/// Full command line entry point; returns the process exit code
/// (0 all stages pass, 1 a stage failed, 2 usage or input error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ctlink::cli
