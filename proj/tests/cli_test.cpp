#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/csv.hpp"
#include "cli/plot.hpp"
#include "cli/scenario.hpp"
#include "flatin/errors.hpp"

namespace flatin::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kScenarioDir = FLATIN_SCENARIO_DIR;

class TempDir : public ::testing::Test {
   protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("flatin_cli_") + info->test_suite_name() + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }
    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

Scenario parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

TEST(ParseNumber, StrictTokens) {
    EXPECT_EQ(parse_number("0.25"), 0.25);
    EXPECT_EQ(parse_number("-3"), -3.0);
    EXPECT_EQ(parse_number("pi"), std::numbers::pi);
    EXPECT_EQ(parse_number("-pi"), -std::numbers::pi);
    EXPECT_EQ(parse_number("pi/2"), std::numbers::pi / 2);
    EXPECT_EQ(parse_number("2*pi"), 2 * std::numbers::pi);
    EXPECT_FALSE(parse_number("1.5x"));
    EXPECT_FALSE(parse_number(""));
    EXPECT_FALSE(parse_number("nan"));
    EXPECT_FALSE(parse_number("inf"));
    EXPECT_FALSE(parse_number("pi/0"));
}

TEST(ParseScenario, Defaults) {
    const Scenario s = parse("# nothing but a comment\n\nname = bare\n");
    EXPECT_EQ(s.name, "bare");
    EXPECT_EQ(s.sim_dt, 0.01);
    EXPECT_EQ(s.ctrl_dt, 0.1);
    EXPECT_EQ(s.gains, (std::vector<double>{2, 6, 4}));
    const auto cfg = s.to_sim_config();
    EXPECT_EQ(cfg.trajectory.t_end(), s.duration);
    EXPECT_EQ(control::reference_jet(cfg.trajectory, 3.0, 0)[0], 1.0);
}

TEST(ParseScenario, FullFile) {
    const Scenario s = parse(
        "name = t\nmode = feedforward\nsim_dt = 0.005\nctrl_dt = 0.05\nduration = 25\n"
        "gains = 2, 6, 4\nx0 = 1, 0, pi/2   # trailing comment\n"
        "segment = poly7 0 20 1 2\nsegment = hold 20 25 2\noutput = t.csv\n");
    EXPECT_EQ(s.mode, sim::Mode::kFeedforward);
    EXPECT_EQ(s.sim_dt, 0.005);
    EXPECT_EQ(s.x0.x3, std::numbers::pi / 2);
    ASSERT_EQ(s.segments.size(), 2u);
    EXPECT_EQ(s.segments[1].end_value(), 2.0);
    EXPECT_EQ(s.output, "t.csv");
    EXPECT_NO_THROW(s.to_sim_config());
}

void expect_config_error(const std::string& text, std::size_t line, const std::string& fragment) {
    try {
        const auto s = parse(text);
        s.to_sim_config();
        FAIL() << "expected ConfigError for:\n" << text;
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

TEST(ParseScenario, Errors) {
    expect_config_error("name = a\ngians = 2, 6, 4\n", 2, "gians");
    expect_config_error("sim_dt = 0.01x\n", 1, "sim_dt");
    expect_config_error("sim_dt = 0.01\nsim_dt = 0.02\n", 2, "sim_dt");
    expect_config_error("just words\n", 1, "");
    expect_config_error("mode = sideways\n", 1, "mode");
    expect_config_error("x0 = 1, 0\n", 1, "x0");
    expect_config_error("segment = ramp 0 1 0 1\n", 1, "ramp");
    expect_config_error("segment = hold 0 1\n", 1, "");
    expect_config_error("gains = -1, 1, 1\n", 0, "Hurwitz");
    expect_config_error("segment = hold 0 1 1\nsegment = hold 2 3 1\n", 0, "");
}

TEST(Csv, RoundTripIsLossless) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> v(-1e3, 1e3);
    sim::SimulationTrace trace;
    for (int i = 0; i < 500; ++i) {
        sim::TraceRow r;
        r.t = i * 0.01;
        r.x1 = v(rng);
        r.x2 = v(rng) * 1e-12;
        r.x3 = v(rng) * 1e200;
        r.y = r.x1;
        r.yref = 1.0 / 3.0;
        r.dy = -0.0;
        r.ddy = std::numeric_limits<double>::denorm_min();
        r.u = v(rng);
        r.uf = std::nextafter(1.0, 2.0);
        r.e = v(rng);
        r.flags = static_cast<std::uint32_t>(i % 64);
        trace.rows.push_back(r);
    }
    std::stringstream buf;
    write_trace_csv(buf, trace);
    EXPECT_EQ(buf.str().substr(0, std::string(kCsvHeader).size() + 1), std::string(kCsvHeader) + "\n");
    EXPECT_EQ(buf.str().find('\r'), std::string::npos);
    const auto back = read_trace_csv(buf);
    ASSERT_EQ(back.size(), trace.rows.size());
    for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(back[i], trace.rows[i]) << "row " << i;
}

TEST(Csv, RejectsMalformedInput) {
    std::istringstream bad_header("t,x1\n0,1\n");
    EXPECT_THROW(read_trace_csv(bad_header), Error);
    std::istringstream bad_row(std::string(kCsvHeader) + "\n0,1,2\n");
    EXPECT_THROW(read_trace_csv(bad_row), Error);
}

using RunCommand = TempDir;

TEST_F(RunCommand, EquilibriumScenario) {
    const fs::path csv = dir_ / "eq.csv";
    ASSERT_EQ(cmd_run({kScenarioDir / "equilibrium.scn", {}, {}, {}, csv}, out_, err_), kOk) << err_.str();
    EXPECT_NE(out_.str().find("max|e|"), std::string::npos);
    std::ifstream in(csv);
    const auto rows = read_trace_csv(in);
    EXPECT_EQ(rows.size(), 2001u);
    for (const auto& r : rows) EXPECT_LT(std::abs(r.e), 1e-6);
}

TEST_F(RunCommand, ConfigErrorWritesNoCsv) {
    const fs::path scn = write("bad.scn", "name = bad\ngians = 2, 6, 4\n");
    EXPECT_EQ(cmd_run({scn, {}, {}, {}, {}}, out_, err_), kConfigError);
    EXPECT_NE(err_.str().find("line 2"), std::string::npos) << err_.str();
    EXPECT_FALSE(fs::exists(dir_ / "bad.csv"));
}

TEST_F(RunCommand, MissingScenarioIsConfigError) {
    EXPECT_EQ(cmd_run({dir_ / "absent.scn", {}, {}, {}, {}}, out_, err_), kConfigError);
}

TEST_F(RunCommand, RepeatRunsAreByteIdentical) {
    const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
    const fs::path scn = kScenarioDir / "tracking.scn";
    ASSERT_EQ(cmd_run({scn, {}, {}, {}, a}, out_, err_), kOk) << err_.str();
    ASSERT_EQ(cmd_run({scn, {}, {}, {}, b}, out_, err_), kOk) << err_.str();
    const std::string first = slurp(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(b));
}

TEST_F(RunCommand, FaultStillWritesPartialTrace) {
    const fs::path csv = dir_ / "offset.csv";
    EXPECT_EQ(cmd_run({kScenarioDir / "initial_offset.scn", {}, {}, {}, csv}, out_, err_), kSimFault);
    std::ifstream in(csv);
    const auto rows = read_trace_csv(in);
    ASSERT_FALSE(rows.empty());
    EXPECT_NE(rows.back().flags & sim::kDomainExit, 0u);
}

TEST_F(RunCommand, OverridesAndDefaultOutput) {
    const fs::path scn = write("short.scn", "name = short\nduration = 1\n");
    ASSERT_EQ(cmd_run({scn, 0.005, 0.05, 0.5, {}}, out_, err_), kOk) << err_.str();
    std::ifstream in(dir_ / "short.csv");
    const auto rows = read_trace_csv(in);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows.back().t, 0.5);
    EXPECT_EQ(cmd_run({scn, 0.01, 0.025, {}, {}}, out_, err_), kConfigError);
}

TEST(VerifyCommand, DefaultGridPasses) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify({}, out, err), kOk) << err.str();
    EXPECT_NE(out.str().find("result: pass"), std::string::npos) << out.str();
}

TEST(VerifyCommand, BoundaryGridIsRejected) {
    std::ostringstream out, err;
    VerifyOptions opts;
    opts.x3_min = 0.0;
    EXPECT_EQ(cmd_verify(opts, out, err), kConfigError);
}

TEST(VerifyCommand, PerturbedGammaFails) {
    std::ostringstream out, err;
    VerifyOptions opts;
    opts.perturb = 1e-6;
    EXPECT_EQ(cmd_verify(opts, out, err), kVerifyFailed);
}

using PlotCommand = TempDir;

std::string header_and(const std::string& rows) { return std::string(kCsvHeader) + "\n" + rows; }

TEST_F(PlotCommand, ValidTrace) {
    const fs::path csv = write("tr.csv", header_and("0,1,0,1.5,1,1,0,0,0,0,0,0\n0.01,1,0,1.5,1,1,0,0,0,0,0,0\n"));
    ASSERT_EQ(cmd_plot({csv, {}}, out_, err_), kOk) << err_.str();
    const std::string script = slurp(dir_ / "tr.csv.gp");
    for (const char* col : {"\"t\"", "\"y\"", "\"yref\"", "\"u\"", "\"x3\""})
        EXPECT_NE(script.find(col), std::string::npos) << col;
    EXPECT_NE(script.find("tr.csv"), std::string::npos);
    EXPECT_EQ(script.find("fault"), std::string::npos);
}

TEST_F(PlotCommand, EmptyCsv) {
    const fs::path empty = write("e.csv", "");
    EXPECT_EQ(cmd_plot({empty, {}}, out_, err_), kConfigError);
    EXPECT_NE(err_.str().find("no data rows"), std::string::npos) << err_.str();

    const fs::path header_only = write("h.csv", header_and(""));
    std::ostringstream err2;
    EXPECT_NE(cmd_plot({header_only, {}}, out_, err2), kOk);
    EXPECT_NE(err2.str().find("no data rows"), std::string::npos) << err2.str();
}

TEST_F(PlotCommand, MissingColumnsAreNamed) {
    const fs::path csv = write("m.csv", "t,y,flags\n0,1,0\n");
    EXPECT_NE(cmd_plot({csv, {}}, out_, err_), kOk);
    EXPECT_NE(err_.str().find("yref"), std::string::npos) << err_.str();
    EXPECT_NE(err_.str().find("x3"), std::string::npos) << err_.str();
    EXPECT_EQ(err_.str().find(" y,"), std::string::npos) << err_.str();
}

TEST_F(PlotCommand, FaultIsAnnotated) {
    const fs::path csv = write("f.csv", header_and("0,1,0,1.5,1,1,0,0,0,0,0,0\n2.68,1,0,0,1,1,0,0,0,0,0,16\n"));
    ASSERT_EQ(cmd_plot({csv, dir_ / "f.gp"}, out_, err_), kOk) << err_.str();
    const std::string script = slurp(dir_ / "f.gp");
    EXPECT_NE(script.find("2.68"), std::string::npos);
    EXPECT_NE(script.find("fault"), std::string::npos);
}

using SweepCommand = TempDir;

TEST_F(SweepCommand, RunsEveryScenario) {
    write("a.scn", "name = a\nduration = 1\noutput = a.csv\n");
    write("b.scn", "name = b\nduration = 2\noutput = b.csv\n");
    EXPECT_EQ(cmd_sweep({dir_, 2}, out_, err_), kOk) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "a.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "b.csv"));
}

TEST_F(SweepCommand, ReportsWorstExitCode) {
    write("ok.scn", "name = ok\nduration = 1\n");
    write("bad.scn", "name = bad\ngians = 1\n");
    EXPECT_EQ(cmd_sweep({dir_, 0}, out_, err_), kConfigError);
    EXPECT_TRUE(fs::exists(dir_ / "ok.csv"));
}

}  // namespace
}  // namespace flatin::cli
