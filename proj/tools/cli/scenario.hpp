#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "flatin/errors.hpp"
#include "flatin/simulator.hpp"

namespace flatin::cli {

/// Scenario file problem, tagged with the 1-based line (0 = whole file).
class ConfigError : public Error {
   public:
    ConfigError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

/**
 * @brief Parsed `key = value` scenario
 *
 *   name     = tracking
 *   mode     = feedback            # or feedforward
 *   sim_dt   = 0.01
 *   ctrl_dt  = 0.1
 *   duration = 25
 *   gains    = 2, 6, 4             # lambda_0, lambda_1, lambda_2
 *   x0       = 1, 0, pi/2
 *   segment  = poly7 0 20 1 2      # t_start t_end from to
 *   segment  = hold 20 25 2        # t_start t_end value
 *   output   = tracking.csv        # relative to the scenario file
 *
 * Every key except `segment` may appear once. Without segments the
 * reference holds x0's first component over [0, duration].
 */
struct Scenario {
    std::string name = "scenario";
    sim::Mode mode = sim::Mode::kFeedback;
    double sim_dt = 0.01;
    double ctrl_dt = 0.1;
    double duration = 10.0;
    std::vector<double> gains{2.0, 6.0, 4.0};
    pendulum::PendulumState x0{1.0, 0.0, pendulum::kHalfPi};
    std::vector<control::Segment> segments;
    std::optional<std::string> output;

    /// Throws ConfigError for anything SimConfig rejects (bad gains, steps).
    sim::SimConfig to_sim_config() const;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

/// Strict finite number: a full-token decimal, or `pi`, `pi/N`, `N*pi`, `-pi`.
std::optional<double> parse_number(std::string_view token);

}  // namespace flatin::cli
