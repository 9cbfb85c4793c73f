// Batch front-end: parses a JSON config, dispatches one of the five analysis
// workflows, and writes <verb>.csv plus manifest.json into the output
// directory. Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tlsim/commands.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    int seed = 0;  // reserved; no stochastic paths in v1
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "path to the JSON run configuration")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--threads", opts.threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "reserved for future stochastic paths");
}

void write_outputs(const std::string& verb, const std::string& out_dir,
                   const tlsim::CommandResult& result) {
    fs::create_directories(out_dir);
    const fs::path csv_path = fs::path(out_dir) / (verb + ".csv");
    const fs::path manifest_path = fs::path(out_dir) / "manifest.json";
    std::ofstream csv(csv_path, std::ios::binary);
    csv << result.csv;
    std::ofstream manifest(manifest_path, std::ios::binary);
    manifest << result.manifest.dump(2) << '\n';
    std::cout << "wrote " << csv_path.string() << " and " << manifest_path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TLS-resonator simulator: effective couplings, gates, readout"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* sweep = app.add_subcommand("sweep-coupling", "effective coupling vs detuning");
    auto* compare = app.add_subcommand("compare", "full model vs effective model");
    auto* gate = app.add_subcommand("gate", "iSWAP synthesis and fidelity report");
    auto* readout = app.add_subcommand("readout", "quadrature weights and correlation check");
    auto* universality = app.add_subcommand("universality", "Lie-closure dimension report");
    for (auto* cmd : {sweep, compare, gate, readout, universality}) add_common(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        const tlsim::RunConfig config = tlsim::load_config_file(opts.config_path);
        tlsim::CommandResult result;
        std::string verb;
        if (sweep->parsed()) {
            verb = "sweep-coupling";
            result = tlsim::cmd_sweep_coupling(config, opts.threads);
        } else if (compare->parsed()) {
            verb = "compare";
            result = tlsim::cmd_compare_effective(config, opts.threads);
        } else if (gate->parsed()) {
            verb = "gate";
            result = tlsim::cmd_gate(config);
        } else if (readout->parsed()) {
            verb = "readout";
            result = tlsim::cmd_readout(config);
        } else {
            verb = "universality";
            result = tlsim::cmd_universality(config);
        }
        write_outputs(verb, opts.out_dir, result);
    } catch (const tlsim::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const tlsim::error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
