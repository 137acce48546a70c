#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "favprop/version.hpp"

namespace cli = favprop::cli;

namespace {

void add_common_ensemble_flags(CLI::App* cmd, cli::EnsembleCommandArgs& args,
                               std::string& preset, CLI::Option*& m_opt,
                               CLI::Option*& k_opt) {
    cmd->add_option("--model", args.model, "channel model")
        ->required()
        ->check(CLI::IsMember({"rayleigh", "urlos"}));
    m_opt = cmd->add_option("--M", args.num_antennas, "base-station antennas")
                ->check(CLI::PositiveNumber);
    k_opt = cmd->add_option("--K", args.num_terminals, "terminals")
                ->check(CLI::PositiveNumber);
    cmd->add_option("--rho", args.rho, "normalized transmit SNR")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--trials", args.trials, "Monte Carlo realizations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", args.seed, "master seed")->capture_default_str();
    cmd->add_option("--spacing", args.spacing, "antenna spacing in wavelengths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--threads", args.threads, "worker threads (never changes results)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", args.out, "output file (bare names land in $FAVPROP_OUT_DIR)");
    cmd->add_option("--preset", preset, "scenario preset")
        ->check(CLI::IsMember({"100x10", "200x20"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"favprop: favorable-propagation analysis for multi-antenna channels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(favprop::kVersion));
    app.set_config("--config", "", "key=value config file; flags win over file values");

    int exit_code = 0;

    // singular-cdf
    cli::EnsembleCommandArgs singular_args;
    std::string singular_preset;
    CLI::Option* singular_m = nullptr;
    CLI::Option* singular_k = nullptr;
    auto* singular = app.add_subcommand(
        "singular-cdf", "empirical distribution of the Gramian eigenvalues");
    add_common_ensemble_flags(singular, singular_args, singular_preset, singular_m,
                              singular_k);
    singular->callback([&] {
        cli::apply_preset(singular_preset, singular_args.num_antennas,
                          singular_args.num_terminals, singular_m->count() > 0,
                          singular_k->count() > 0);
        exit_code = cli::run_singular_cdf(singular_args);
    });

    // capacity-cdf
    cli::EnsembleCommandArgs capacity_args;
    std::string capacity_preset;
    CLI::Option* capacity_m = nullptr;
    CLI::Option* capacity_k = nullptr;
    auto* capacity = app.add_subcommand(
        "capacity-cdf", "per-terminal capacity, its bounds and the relative gap");
    add_common_ensemble_flags(capacity, capacity_args, capacity_preset, capacity_m,
                              capacity_k);
    capacity->callback([&] {
        cli::apply_preset(capacity_preset, capacity_args.num_antennas,
                          capacity_args.num_terminals, capacity_m->count() > 0,
                          capacity_k->count() > 0);
        exit_code = cli::run_capacity_cdf(capacity_args);
    });

    // drop-prob
    cli::DropArgs drop_args;
    std::string drop_preset;
    auto* drop = app.add_subcommand(
        "drop-prob", "exact terminal-drop distribution of the beam occupancy model");
    auto* drop_m = drop->add_option("--M", drop_args.num_beams, "orthogonal beams")
                       ->check(CLI::PositiveNumber);
    auto* drop_k = drop->add_option("--K", drop_args.num_terminals, "terminals")
                       ->check(CLI::PositiveNumber);
    drop->add_option("--mc-trials", drop_args.mc_trials,
                     "optional Monte Carlo overlay trial count");
    drop->add_option("--seed", drop_args.seed, "seed for the overlay")->capture_default_str();
    drop->add_option("--threads", drop_args.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    drop->add_option("--format", drop_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    drop->add_option("--out", drop_args.out, "output file");
    drop->add_option("--preset", drop_preset, "scenario preset")
        ->check(CLI::IsMember({"100x10", "200x20"}));
    drop->callback([&] {
        cli::apply_preset(drop_preset, drop_args.num_beams, drop_args.num_terminals,
                          drop_m->count() > 0, drop_k->count() > 0);
        exit_code = cli::run_drop_prob(drop_args);
    });

    // variance-check
    cli::VarianceArgs variance_args;
    auto* variance = app.add_subcommand(
        "variance-check", "sample vs closed-form inner-product variances");
    variance->add_option("--model", variance_args.model, "channel model")
        ->required()
        ->check(CLI::IsMember({"rayleigh", "urlos"}));
    variance->add_option("--M-list", variance_args.m_list,
                         "comma-separated antenna counts")
        ->required();
    variance->add_option("--trials", variance_args.trials, "independent pair draws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    variance->add_option("--seed", variance_args.seed, "master seed")->capture_default_str();
    variance->add_option("--spacing", variance_args.spacing,
                         "antenna spacing in wavelengths")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    variance->add_option("--threads", variance_args.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    variance->add_option("--format", variance_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    variance->add_option("--out", variance_args.out, "output file");
    variance->callback([&] { exit_code = cli::run_variance_check(variance_args); });

    // report
    cli::ReportArgs report_args;
    auto* report = app.add_subcommand(
        "report", "validate prior outputs against the bundled thresholds");
    report->add_option("inputs", report_args.inputs, "output files from earlier runs")
        ->required();
    report->add_option("--format", report_args.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    report->add_option("--out", report_args.out, "write the report here instead of stdout");
    report->callback([&] { exit_code = cli::run_report(report_args); });

    // rerun
    std::string manifest_path;
    auto* rerun = app.add_subcommand("rerun", "re-execute a run from its manifest");
    rerun->add_option("--manifest", manifest_path, "manifest sidecar path")->required();
    rerun->callback([&] { exit_code = cli::run_rerun(manifest_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cli::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
