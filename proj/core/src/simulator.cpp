#include "flatin/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatin/errors.hpp"
#include "flatin/rk4.hpp"
#include "flatin/tracking.hpp"

namespace flatin::sim {

namespace {

using pendulum::PendulumState;
using State = std::array<double, 3>;

State as_array(const PendulumState& x) { return {x.x1, x.x2, x.x3}; }
PendulumState as_state(const State& s) { return {s[0], s[1], s[2]}; }

struct Grid {
    long long ticks_every = 1;
    long long steps = 0;
};

Grid make_grid(double sim_dt, double ctrl_dt, double duration) {
    if (!(sim_dt > 0.0) || !std::isfinite(sim_dt)) throw InvalidConfigError("sim_dt must be positive");
    if (!(ctrl_dt > 0.0) || !std::isfinite(ctrl_dt)) throw InvalidConfigError("ctrl_dt must be positive");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidConfigError("duration must be positive");

    const double ratio = ctrl_dt / sim_dt;
    const long long every = std::llround(ratio);
    if (every < 1 || std::abs(ratio - static_cast<double>(every)) > 1e-9 * std::max(1.0, ratio)) {
        throw InvalidConfigError("ctrl_dt must be an integer multiple of sim_dt");
    }
    const double span = duration / sim_dt;
    long long steps = std::llround(span);
    if (std::abs(span - static_cast<double>(steps)) > 1e-9 * std::max(1.0, span)) {
        steps = static_cast<long long>(std::floor(span));
    }
    return {every, steps};
}

void require_domain(const PendulumState& x) {
    if (!std::isfinite(x.x1) || !std::isfinite(x.x2) || !pendulum::in_observable_domain(x.x3)) {
        throw DomainError("initial state must be finite with 0 < x3 < pi");
    }
}

std::string halt_message(double t, const PendulumState& x) {
    std::ostringstream os;
    os.precision(17);
    os << "state left the observable domain at t=" << t << " (x3=" << x.x3 << ")";
    return os.str();
}

TraceRow make_row(double t, const PendulumState& x, double yref, double u, double uf, std::uint32_t flags) {
    TraceRow row;
    row.t = t;
    row.x1 = x.x1;
    row.x2 = x.x2;
    row.x3 = x.x3;
    row.y = x.x1;
    row.yref = yref;
    row.dy = x.x2;
    row.ddy = -pendulum::cos_angle(x.x3) + x.x1 * u * u;
    row.u = u;
    row.uf = uf;
    row.e = yref - x.x1;
    row.flags = flags;
    return row;
}

// Integrates one fine step. Returns the fault flag (0 if none) and leaves the
// new state in `x`.
template <typename Deriv>
std::uint32_t advance(Deriv&& deriv, PendulumState& x, double u, double h, std::string& message, double t_next) {
    State next;
    try {
        next = rk4_step(deriv, as_array(x), u, h);
    } catch (const NumericsError& err) {
        message = err.what();
        return kNumericsFault;
    }
    x = as_state(next);
    if (!pendulum::in_observable_domain(x.x3)) {
        message = halt_message(t_next, x);
        return kDomainExit;
    }
    return 0;
}

}  // namespace

void validate(const SimConfig& cfg) {
    make_grid(cfg.sim_dt, cfg.ctrl_dt, cfg.duration);
    if (cfg.gains.order() != 3) throw InvalidConfigError("pendulum controller needs three gains");
}

double SimulationTrace::max_abs_error() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, std::abs(r.e));
    return m;
}

double SimulationTrace::final_abs_error() const { return rows.empty() ? 0.0 : std::abs(rows.back().e); }

SimulationTrace run_closed_loop(const SimConfig& cfg) {
    validate(cfg);
    require_domain(cfg.x0);
    const Grid grid = make_grid(cfg.sim_dt, cfg.ctrl_dt, cfg.duration);

    const FlatInputSystem flat = pendulum::make_flat_input_system();
    const auto plant = [](const State& s, double u) { return pendulum::dynamics(as_state(s), u); };

    SimulationTrace trace;
    trace.rows.reserve(static_cast<std::size_t>(grid.steps + 1));

    PendulumState x = cfg.x0;
    control::CompensatorState comp{0.0, cfg.ctrl_dt, 0};
    double u_held = 0.0;
    double uf_held = 0.0;

    for (long long i = 0; i <= grid.steps; ++i) {
        const double t = static_cast<double>(i) * cfg.sim_dt;
        std::uint32_t flags = 0;
        const control::ReferenceJet ref = control::reference_jet(cfg.trajectory, t, 3);

        if (i % grid.ticks_every == 0) {
            const pendulum::PendulumJet measured = pendulum::output_jet(x, u_held);
            if (!measured.in_range()) flags |= kJetRange;
            const auto meas = measured.as_array();

            double uf = uf_held;
            try {
                uf = cfg.mode == Mode::kFeedback ? control::feedback_linearize(flat, meas, ref, cfg.gains)
                                                 : control::feedforward_flat_input(flat, ref);
            } catch (const PfSingularError&) {
                flags |= kPfSingular;
            }

            const pendulum::PendulumJet comp_jet =
                cfg.mode == Mode::kFeedback ? measured : pendulum::PendulumJet{ref[0], ref[1], ref[2]};
            try {
                const control::CompensatorOutput out = pendulum::compensator_step(comp_jet, uf, comp);
                if (out.clamped) flags |= kRootClamp;
                u_held = out.u;
                comp = out.next;
            } catch (const CompensatorSingularError&) {
                flags |= kCompensatorSingular;
                comp.k += 1;
            }
            uf_held = uf;
        }

        trace.rows.push_back(make_row(t, x, ref[0], u_held, uf_held, flags));
        if (i == grid.steps) break;

        const double t_next = static_cast<double>(i + 1) * cfg.sim_dt;
        std::string message;
        if (const std::uint32_t fault = advance(plant, x, u_held, cfg.sim_dt, message, t_next)) {
            const double yref = control::reference_jet(cfg.trajectory, t_next, 0)[0];
            trace.rows.push_back(make_row(t_next, x, yref, u_held, uf_held, fault));
            trace.fault = Fault{t_next, fault, message};
            break;
        }
    }
    return trace;
}

EquivalenceResult io_equivalence_run(const EquivalenceConfig& cfg) {
    require_domain(cfg.x0);
    const Grid grid = make_grid(cfg.sim_dt, cfg.ctrl_dt, cfg.duration);
    if (!cfg.uf_signal) throw InvalidConfigError("equivalence run needs a flat input signal");

    const auto plant = [](const State& s, double u) { return pendulum::dynamics(as_state(s), u); };
    const auto flat_plant = [](const State& s, double uf) { return pendulum::flat_dynamics(as_state(s), uf); };

    EquivalenceResult result;
    PendulumState xc = cfg.x0;
    PendulumState xf = cfg.x0;
    control::CompensatorState comp{0.0, cfg.ctrl_dt, 0};
    double u_held = 0.0;
    double uf_held = 0.0;
    bool compensated_running = true;
    bool flat_running = true;

    for (long long i = 0; i <= grid.steps && (compensated_running || flat_running); ++i) {
        const double t = static_cast<double>(i) * cfg.sim_dt;
        std::uint32_t flags = 0;
        if (i % grid.ticks_every == 0) {
            uf_held = cfg.uf_signal(t);
            const pendulum::PendulumJet measured = pendulum::output_jet(xc, u_held);
            if (!measured.in_range()) flags |= kJetRange;
            try {
                const auto out = pendulum::compensator_step(measured, uf_held, comp);
                if (out.clamped) flags |= kRootClamp;
                u_held = out.u;
                comp = out.next;
            } catch (const CompensatorSingularError&) {
                flags |= kCompensatorSingular;
                comp.k += 1;
            }
        }

        if (flat_running) {
            TraceRow row = make_row(t, xf, 0.0, uf_held, uf_held, 0);
            row.ddy = -pendulum::cos_angle(xf.x3);
            row.yref = row.e = 0.0;
            result.flat.rows.push_back(row);
        }
        if (compensated_running) {
            TraceRow row = make_row(t, xc, 0.0, u_held, uf_held, flags);
            row.e = 0.0;
            result.compensated.rows.push_back(row);
        }
        if (flat_running && compensated_running) {
            result.max_deviation = std::max(result.max_deviation, std::abs(xf.x1 - xc.x1));
        }
        if (i == grid.steps) break;

        const double t_next = static_cast<double>(i + 1) * cfg.sim_dt;
        std::string message;
        if (compensated_running) {
            if (const auto fault = advance(plant, xc, u_held, cfg.sim_dt, message, t_next)) {
                result.compensated.rows.push_back(make_row(t_next, xc, 0.0, u_held, uf_held, fault));
                result.compensated.fault = Fault{t_next, fault, message};
                compensated_running = false;
            }
        }
        if (flat_running) {
            if (const auto fault = advance(flat_plant, xf, uf_held, cfg.sim_dt, message, t_next)) {
                result.flat.rows.push_back(make_row(t_next, xf, 0.0, uf_held, uf_held, fault));
                result.flat.fault = Fault{t_next, fault, message};
                flat_running = false;
            }
        }
    }
    return result;
}

}  // namespace flatin::sim
