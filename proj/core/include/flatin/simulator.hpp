#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatin/hurwitz.hpp"
#include "flatin/pendulum.hpp"
#include "flatin/reference.hpp"

namespace flatin::sim {

/// Bits of TraceRow::flags.
enum Flag : std::uint32_t {
    kRootClamp = 1u << 0,            ///< compensator square-root argument clamped
    kCompensatorSingular = 1u << 1,  ///< denominator guard fired, u held
    kPfSingular = 1u << 2,           ///< |p_f| guard fired, u_f held
    kJetRange = 1u << 3,             ///< measured |ddy| >= 1
    kDomainExit = 1u << 4,           ///< state left D_o, run halted
    kNumericsFault = 1u << 5,        ///< non-finite state, run halted
};

enum class Mode { kFeedback, kFeedforward };

struct SimConfig {
    double sim_dt = 0.01;
    double ctrl_dt = 0.1;
    double duration = 10.0;
    pendulum::PendulumState x0{};
    control::ControllerGains gains{{2.0, 6.0, 4.0}};
    Mode mode = Mode::kFeedback;
    control::ReferenceTrajectory trajectory = control::ReferenceTrajectory::constant(1.0, 0.0, 10.0);
};

/// Throws InvalidConfigError unless sim_dt > 0, duration > 0, ctrl_dt is an
/// integer multiple of sim_dt and the gains are third order.
void validate(const SimConfig& cfg);

struct TraceRow {
    double t = 0.0;
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
    double y = 0.0;
    double yref = 0.0;
    double dy = 0.0;
    double ddy = 0.0;  ///< -cos x3 + x1 u^2 with the u applied over this step
    double u = 0.0;    ///< input applied over [t, t + sim_dt)
    double uf = 0.0;   ///< flat input of the latest controller tick
    double e = 0.0;    ///< yref - y
    std::uint32_t flags = 0;

    bool operator==(const TraceRow&) const = default;
};

struct Fault {
    double t = 0.0;
    std::uint32_t flag = 0;
    std::string message;
};

struct SimulationTrace {
    std::vector<TraceRow> rows;
    std::optional<Fault> fault;

    double max_abs_error() const;
    double final_abs_error() const;
};

/**
 * @brief Multi-rate closed loop: RK4 plant at sim_dt, zero-order-hold
 * controller and compensator at ctrl_dt
 *
 * Ticks happen at t = 0 and every ctrl_dt after. At a tick the output jet is
 * rebuilt from the state with the held u[k-1], u_f comes from feedback
 * linearization (or the reference-driven feedforward), and the compensator
 * produces u[k]. In feedforward mode the compensator is fed the reference
 * jet. One row is recorded per fine step, including t = duration. A run that
 * leaves 0 < x3 < pi halts and returns the partial trace with a fault.
 */
SimulationTrace run_closed_loop(const SimConfig& cfg);

struct EquivalenceConfig {
    double sim_dt = 0.01;
    double ctrl_dt = 0.1;
    double duration = 10.0;
    pendulum::PendulumState x0{};
    std::function<double(double t)> uf_signal = [](double) { return 0.0; };
};

struct EquivalenceResult {
    SimulationTrace flat;         ///< flat-input pendulum driven by u_f
    SimulationTrace compensated;  ///< original pendulum behind the compensator
    double max_deviation = 0.0;   ///< max |y_flat - y_compensated|
};

/// Drives the flat-input pendulum and the compensated original with the same
/// sampled-and-held u_f sequence from the same initial state.
EquivalenceResult io_equivalence_run(const EquivalenceConfig& cfg);

}  // namespace flatin::sim
