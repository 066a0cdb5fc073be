// twrsim: run secrecy-rate experiments described by spec files.
//
// Exit codes: 0 success, 2 spec error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twr/experiment.hpp"

namespace {

constexpr int kExitSpecError = 2;
constexpr int kExitNumericalError = 3;

int run_command(const std::string& spec_path, const std::string& out_path, bool has_seed,
                std::uint64_t seed, bool quiet, bool serial) {
    twr::ExperimentSpec spec;
    try {
        spec = twr::load_spec(spec_path);
    } catch (const twr::SpecError& err) {
        std::cerr << "spec error: " << err.what() << '\n';
        return kExitSpecError;
    }
    if (has_seed) spec.seed = seed;

    try {
        twr::RunOptions options;
        options.parallel = !serial;
        options.quiet = quiet;
        const twr::ResultTable table = twr::run_experiment(spec, options);
        const std::string csv = twr::to_csv(table);
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << out_path << '\n';
                return kExitNumericalError;
            }
            out << csv;
        }
    } catch (const twr::SpecError& err) {
        std::cerr << "spec error: " << err.what() << '\n';
        return kExitSpecError;
    } catch (const std::exception& err) {
        std::cerr << "numerical failure: " << err.what() << '\n';
        return kExitNumericalError;
    }
    return 0;
}

int validate_command(const std::string& spec_path) {
    try {
        const twr::ExperimentSpec spec = twr::load_spec(spec_path);
        std::cout << "ok: " << twr::experiment_name(spec.kind) << '\n';
    } catch (const twr::SpecError& err) {
        std::cerr << "spec error: " << err.what() << '\n';
        return kExitSpecError;
    }
    return 0;
}

void list_command() {
    for (twr::ExperimentKind kind : twr::all_experiments())
        std::cout << twr::experiment_name(kind) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-way relay secrecy-rate experiment runner"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool quiet = false;
    bool serial = false;

    CLI::App* run = app.add_subcommand("run", "run an experiment and emit CSV");
    run->add_option("spec-file", spec_path, "experiment spec file")->required();
    run->add_option("--out", out_path, "CSV output path (stdout when omitted)");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "override the spec's seed");
    run->add_flag("--quiet", quiet, "suppress progress output");
    run->add_flag("--serial", serial, "disable parallel sweep evaluation");

    CLI::App* validate = app.add_subcommand("validate", "check a spec file");
    validate->add_option("spec-file", spec_path, "experiment spec file")->required();

    app.add_subcommand("list-experiments", "print the known experiment names");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return run_command(spec_path, out_path, seed_opt->count() > 0, seed, quiet, serial);
    if (validate->parsed()) return validate_command(spec_path);
    list_command();
    return 0;
}
