#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sensguard/allocator.hpp"
#include "sensguard/error.hpp"

using namespace sensguard;

namespace {

void add_common(CLI::App* app, cli::CommonOptions& common)
{
    app->add_option("--config", common.config, "scenario config file (INI)")->check(CLI::ExistingFile);
    app->add_option("--seed", common.seed, "master seed, overrides scenario.seed");
    app->add_option("--out", common.out, "output directory; stdout when omitted");
    app->add_option("--format", common.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--set", common.overrides, "override a config key, section.key=value")->take_all();
    app->add_option("--trials", common.trials, "override scenario.n_trials");
    app->add_option("--threads", common.threads, "override scenario.threads");
}

}

int main(int argc, char** argv)
{
    configure_allocator();
    CLI::App app{"sensguard: detect radio sensing, bound its tracking accuracy, and jam it"};
    app.require_subcommand(1);
    app.footer(cli::config_key_help());

    cli::CommonOptions common;
    cli::CrlbOptions crlb_opts;
    cli::DetectOptions detect_opts;
    cli::TrajectoryCmdOptions traj_opts;

    auto* crlb = app.add_subcommand("crlb", "CRLB table over an SNR sweep for an LFM pulse");
    add_common(crlb, common);
    crlb->add_option("--bandwidth", crlb_opts.bandwidth, "sweep bandwidth [Hz]");
    crlb->add_option("--fc", crlb_opts.fc, "carrier [Hz]");
    crlb->add_option("--tp", crlb_opts.tp, "pulse duration [s]");
    crlb->add_option("--prt", crlb_opts.prt, "pulse repetition time [s]");
    crlb->add_option("--fs", crlb_opts.fs, "sample rate [Hz], default 2B");
    crlb->add_option("--sigma-phi", crlb_opts.sigma_phi, "fixed angle bound [rad]");
    crlb->add_option("--snr", crlb_opts.snr, "SNR grid in dB, a,b,c or start:step:stop");

    auto* detect = app.add_subcommand("detect", "run CSCE on an I/Q file");
    add_common(detect, common);
    detect->add_option("--iq", detect_opts.iq, "I/Q file")->required()->check(CLI::ExistingFile);
    detect->add_option("--short", detect_opts.short_len, "short window [s]");
    detect->add_option("--long", detect_opts.long_len, "long window [s]");

    auto* sweep = app.add_subcommand("detect-sweep", "detection rate and CRB accuracy versus SINR per channel");
    add_common(sweep, common);

    auto* traj = app.add_subcommand("trajectory", "pedestrian trajectory with sensing geometry");
    add_common(traj, common);
    traj->add_option("--trial", traj_opts.trial, "trial index");

    auto* sim = app.add_subcommand("simulate", "performance-bound tracking simulation");
    add_common(sim, common);

    auto* defend = app.add_subcommand("defend", "tracking simulation with the jamming defense");
    add_common(defend, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (crlb->parsed())
            return cli::run_crlb(common, crlb_opts);
        if (detect->parsed())
            return cli::run_detect(common, detect_opts);
        if (sweep->parsed())
            return cli::run_detect_sweep(common);
        if (traj->parsed())
            return cli::run_trajectory(common, traj_opts);
        if (sim->parsed())
            return cli::run_simulate(common);
        if (defend->parsed())
            return cli::run_defend(common);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
        case ErrorCode::config:
        case ErrorCode::invalid_spec:
        case ErrorCode::invalid_parameter:
            return 3;
        default:
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
