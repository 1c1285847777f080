#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>

namespace flatin::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfigError = 2,
    kSimFault = 3,
    kVerifyFailed = 4,
    kIoError = 5,
};

struct RunOptions {
    std::filesystem::path scenario;
    std::optional<double> sim_dt;
    std::optional<double> ctrl_dt;
    std::optional<double> duration;
    std::optional<std::filesystem::path> out;
};

/// Runs one scenario and writes its CSV (also on a simulation fault).
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::size_t grid = 100;
    double x3_min = 0.2;
    double x3_max = std::numbers::pi - 0.2;
    double perturb = 0.0;  ///< test hook: added to gamma's first component
};

/// Flat-input property, gamma = (0, 0, sin x3) and det Q = sin x3 on a grid.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

struct PlotOptions {
    std::filesystem::path csv;
    std::optional<std::filesystem::path> out;  ///< default: <csv>.gp
};

int cmd_plot(const PlotOptions& opts, std::ostream& out, std::ostream& err);

struct SweepOptions {
    std::filesystem::path dir;
    unsigned jobs = 0;  ///< 0: hardware concurrency
};

/// Runs every *.scn in `dir` concurrently; returns the worst exit code.
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace flatin::cli
