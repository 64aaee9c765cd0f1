// homq: simulate quantized homogeneous feedback, export quantizer seeds and
// run the property-check suites.
//
//   homq simulate --config run.cfg --out traj.csv
//   homq seeds --config run.cfg --levels -2..2 --out seeds.csv
//   homq check --suite all
//
// Exit codes: 0 ok, 1 failed checks, 2 numerical blow-up, 3 I/O, 4 usage.

#include <CLI11.hpp>

#include <iostream>

#include "homq/commands.hpp"

namespace {

int exit_code_for(homq::ErrorCode code) {
    switch (code) {
        case homq::ErrorCode::IoError:
            return homq::kExitIo;
        case homq::ErrorCode::NoConvergence:
            return homq::kExitBlowUp;
        default:
            return homq::kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homogeneous polar-spherical quantizer toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string levels;
    std::string suite;
    homq::CheckOptions check_opts;

    auto* simulate = app.add_subcommand("simulate", "Run a closed-loop simulation and write a trajectory CSV");
    simulate->add_option("--config", config_path, "Run configuration file")->required();
    simulate->add_option("--out", out_path, "Output CSV path")->required();

    auto* seeds = app.add_subcommand("seeds", "Export quantization seeds for a range of radial levels");
    seeds->add_option("--config", config_path, "Run configuration file")->required();
    seeds->add_option("--levels", levels, "Level range lo..hi")->required();
    seeds->add_option("--out", out_path, "Output CSV path")->required();

    auto* check = app.add_subcommand("check", "Run property-check suites");
    check->add_option("--suite", suite, "dilation, norm, quantizer, sector, sim or all")->required();
    check->add_option("--nu", check_opts.nu, "Radial quantizer ratio");
    check->add_option("--delta-angle", check_opts.delta_angle, "Angular grid step (radians)");
    check->add_option("--seed", check_opts.seed, "Sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? homq::kExitOk : homq::kExitUsage;
    }

    try {
        if (*simulate) return homq::cmd_simulate(homq::load_config(config_path), out_path);
        if (*seeds) {
            const auto [lo, hi] = homq::parse_level_range(levels);
            return homq::cmd_seeds(homq::load_config(config_path), lo, hi, out_path);
        }
        return homq::cmd_check(suite, check_opts, std::cout);
    } catch (const homq::Error& e) {
        std::cerr << "homq: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "homq: " << e.what() << '\n';
        return homq::kExitUsage;
    }
}
