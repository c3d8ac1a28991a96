#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
    afsec::cli::RunConfig cfg;
    CLI::App app{
        "Secure amplify-and-forward rates in layered Gaussian relay networks: "
        "closed-form relay scalings, grid-search verification, and relay-count "
        "gap reports."};
    app.add_option("--net", cfg.net_path, "network description file")->required();
    app.add_option("--cmd", cfg.command, "solve | rate | gaps | sweep | verify")
        ->required()
        ->check(CLI::IsMember({"solve", "rate", "gaps", "sweep", "verify"}));
    app.add_option("--k", cfg.k, "relays used per layer (default: all N)");
    app.add_option("--sweep", cfg.sweep_arg,
                   "axis=spec; spec is values v1,v2,... or start,stop,points,log|lin");
    app.add_option("--grid-steps", cfg.grid_steps, "grid steps per axis (verify)");
    app.add_option("--refine", cfg.refine, "grid refinement rounds (verify)");
    app.add_option("--out", cfg.out_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return afsec::cli::run(cfg, std::cout, std::cerr);
}
