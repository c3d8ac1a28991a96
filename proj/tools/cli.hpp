#pragma once

#include <iosfwd>
#include <string>

namespace afsec::cli {

/// Parsed command line of the batch tool.
struct RunConfig {
    std::string net_path;
    std::string command;    // solve | rate | gaps | sweep | verify
    int k = -1;             // relays used per layer; -1 = use all N
    std::string sweep_arg;  // "axis=spec", empty when absent
    int grid_steps = 32;
    int refine = 2;
    std::string out_path;   // empty = stdout
};

/// Runs one command. Exit codes: 0 success or skip, 1 property failure,
/// 2 usage or parse error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace afsec::cli
