#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace flatin::cli;

    CLI::App app{"Flat-input tracking control of the variable-length pendulum"};
    app.require_subcommand(1);

    RunOptions run;
    double sim_dt = 0, ctrl_dt = 0, duration = 0;
    std::string out_path;
    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario file and write its CSV trace");
    run_cmd->add_option("scenario", run.scenario, "Scenario file (key = value)")->required()->check(CLI::ExistingFile);
    auto* sim_dt_opt = run_cmd->add_option("--sim-dt", sim_dt, "Override the integration step [s]");
    auto* ctrl_dt_opt = run_cmd->add_option("--ctrl-dt", ctrl_dt, "Override the controller interval [s]");
    auto* duration_opt = run_cmd->add_option("--duration", duration, "Override the horizon [s]");
    auto* out_opt = run_cmd->add_option("--out", out_path, "CSV output path");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check the pendulum's flat-input identities on a grid");
    verify_cmd->add_option("--grid", verify.grid, "Number of grid points")->capture_default_str();
    verify_cmd->add_option("--x3-min", verify.x3_min, "Smallest rod angle")->capture_default_str();
    verify_cmd->add_option("--x3-max", verify.x3_max, "Largest rod angle")->capture_default_str();
    verify_cmd->add_option("--perturb", verify.perturb, "Add this to gamma's first entry (test hook)");

    PlotOptions plot;
    std::string plot_out;
    auto* plot_cmd = app.add_subcommand("plot", "Emit a gnuplot script for a trace CSV");
    plot_cmd->add_option("csv", plot.csv, "Trace CSV")->required();
    auto* plot_out_opt = plot_cmd->add_option("--out", plot_out, "Script path (default <csv>.gp)");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run every .scn file in a directory in parallel");
    sweep_cmd->add_option("dir", sweep.dir, "Directory of scenario files")->required();
    sweep_cmd->add_option("--jobs", sweep.jobs, "Concurrent runs (0 = hardware threads)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*run_cmd) {
        if (*sim_dt_opt) run.sim_dt = sim_dt;
        if (*ctrl_dt_opt) run.ctrl_dt = ctrl_dt;
        if (*duration_opt) run.duration = duration;
        if (*out_opt) run.out = out_path;
        return cmd_run(run, std::cout, std::cerr);
    }
    if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
    if (*plot_cmd) {
        if (*plot_out_opt) plot.out = plot_out;
        return cmd_plot(plot, std::cout, std::cerr);
    }
    return cmd_sweep(sweep, std::cout, std::cerr);
}
