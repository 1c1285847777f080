#include "cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>
#include <vector>

#include "cli/csv.hpp"
#include "cli/plot.hpp"
#include "cli/scenario.hpp"
#include "flatin/flat_input.hpp"
#include "flatin/pendulum.hpp"

namespace flatin::cli {

namespace fs = std::filesystem;

namespace {

fs::path resolve_output(const RunOptions& opts, const Scenario& sc) {
    if (opts.out) return *opts.out;
    if (sc.output) return opts.scenario.parent_path() / *sc.output;
    fs::path p = opts.scenario;
    return p.replace_extension(".csv");
}

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    Scenario sc;
    sim::SimConfig cfg;
    try {
        sc = load_scenario(opts.scenario);
        if (opts.sim_dt) sc.sim_dt = *opts.sim_dt;
        if (opts.ctrl_dt) sc.ctrl_dt = *opts.ctrl_dt;
        if (opts.duration) sc.duration = *opts.duration;
        cfg = sc.to_sim_config();
    } catch (const ConfigError& e) {
        fmt::print(err, "config error: {}: {}\n", opts.scenario.string(), e.what());
        return kConfigError;
    }

    sim::SimulationTrace trace;
    try {
        trace = sim::run_closed_loop(cfg);
    } catch (const DomainError& e) {
        fmt::print(err, "config error: {}: {}\n", opts.scenario.string(), e.what());
        return kConfigError;
    }

    const fs::path csv = resolve_output(opts, sc);
    {
        std::ofstream file(csv, std::ios::binary);
        if (!file) {
            fmt::print(err, "error: cannot write {}\n", csv.string());
            return kIoError;
        }
        write_trace_csv(file, trace);
    }

    fmt::print(out, "scenario: {}\n", sc.name);
    fmt::print(out, "rows: {}\n", trace.rows.size());
    fmt::print(out, "max|e|: {:.6e}\n", trace.max_abs_error());
    fmt::print(out, "final|e|: {:.6e}\n", trace.final_abs_error());
    fmt::print(out, "fault: {}\n", trace.fault ? trace.fault->message : "none");
    fmt::print(out, "csv: {}\n", csv.string());
    return trace.fault ? kSimFault : kOk;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    if (opts.grid < 2) {
        fmt::print(err, "config error: grid needs at least two points\n");
        return kConfigError;
    }
    if (!pendulum::in_observable_domain(opts.x3_min) || !pendulum::in_observable_domain(opts.x3_max) ||
        !(opts.x3_min <= opts.x3_max)) {
        fmt::print(err, "config error: grid [{}, {}] is outside the observable domain 0 < x3 < pi\n", opts.x3_min,
                   opts.x3_max);
        return kConfigError;
    }

    const SmoothSisoSystem sys = pendulum::make_system();
    const FlatInputSystem flat = pendulum::make_flat_input_system();

    std::vector<Vector> grid;
    grid.reserve(opts.grid);
    for (std::size_t i = 0; i < opts.grid; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(opts.grid - 1);
        const double x3 = opts.x3_min + s * (opts.x3_max - opts.x3_min);
        grid.push_back(Vector{{0.25 + 0.25 * static_cast<double>(i % 7), -0.5 + 0.25 * static_cast<double>(i % 5), x3}});
    }

    const double perturb = opts.perturb;
    const VectorField gamma = [&flat, perturb](const Vector& x) {
        Vector g = flat.gamma(x);
        g(0) += perturb;
        return g;
    };

    double gamma_err = 0.0;
    double det_err = 0.0;
    for (const Vector& x : grid) {
        const Vector built = construct_flat_input(sys, x, flat.alpha);
        gamma_err = std::max(gamma_err, (built - gamma(x)).lpNorm<Eigen::Infinity>());
        det_err = std::max(det_err, std::abs(observability_matrix(sys, x).det - std::sin(x(2))));
    }

    bool ok = gamma_err <= 1e-12 && det_err <= 1e-12;
    FlatInputReport report;
    try {
        report = verify_flat_input(sys, gamma, flat.alpha, grid, 1e-10);
    } catch (const VerificationFailure& e) {
        report = e.report();
        ok = false;
        fmt::print(err, "verification failure: {}\n", e.what());
    }

    fmt::print(out, "grid points: {}\n", grid.size());
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        fmt::print(out, "row {} worst residual: {:.3e}\n", k, report.rows[k].worst);
    }
    fmt::print(out, "constructed vs analytic gamma: {:.3e}\n", gamma_err);
    fmt::print(out, "det Q vs sin x3: {:.3e}\n", det_err);
    fmt::print(out, "result: {}\n", ok ? "pass" : "FAIL");
    return ok ? kOk : kVerifyFailed;
}

int cmd_plot(const PlotOptions& opts, std::ostream& out, std::ostream& err) {
    std::ifstream in(opts.csv, std::ios::binary);
    if (!in) {
        fmt::print(err, "error: cannot read {}\n", opts.csv.string());
        return kIoError;
    }
    TraceSummary summary;
    try {
        summary = scan_trace_csv(in);
    } catch (const PlotError& e) {
        fmt::print(err, "error: {}: {}\n", opts.csv.string(), e.what());
        return kConfigError;
    }

    const fs::path script = opts.out ? *opts.out : fs::path(opts.csv.string() + ".gp");
    fs::path image = opts.csv;
    image.replace_extension(".png");
    std::ofstream file(script, std::ios::binary);
    if (!file) {
        fmt::print(err, "error: cannot write {}\n", script.string());
        return kIoError;
    }
    file << make_plot_script(opts.csv.string(), image.string(), summary);
    fmt::print(out, "script: {}\n", script.string());
    return kOk;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(opts.dir, ec)) {
        fmt::print(err, "error: {} is not a directory\n", opts.dir.string());
        return kIoError;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opts.dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".scn") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        fmt::print(err, "error: no .scn files in {}\n", opts.dir.string());
        return kConfigError;
    }

    struct Outcome {
        int code = kOk;
        std::string out, err;
    };
    const std::size_t jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());

    std::vector<Outcome> outcomes(files.size());
    for (std::size_t begin = 0; begin < files.size(); begin += jobs) {
        const std::size_t end = std::min(files.size(), begin + jobs);
        std::vector<std::future<Outcome>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, [path = files[i]] {
                std::ostringstream o, e;
                RunOptions ro;
                ro.scenario = path;
                const int code = cmd_run(ro, o, e);
                return Outcome{code, o.str(), e.str()};
            }));
        }
        for (std::size_t i = begin; i < end; ++i) outcomes[i] = batch[i - begin].get();
    }

    int worst = kOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto& o = outcomes[i];
        fmt::print(out, "== {} (exit {})\n{}", files[i].filename().string(), o.code, o.out);
        if (!o.err.empty()) fmt::print(err, "{}", o.err);
        worst = std::max(worst, o.code);
    }
    return worst;
}

}  // namespace flatin::cli
