#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "flatin/flat_input.hpp"
#include "flatin/hurwitz.hpp"
#include "flatin/reference.hpp"

namespace flatin::control {

/// Guard on |p_f| below which the linearizing division is refused.
inline constexpr double kDefaultPfGuard = 1e-6;

/// v = y*^(n) + sum_i l_i (y*^(i) - y^(i)), then u_f = (v - q) / p_f.
///
/// `measured` holds (y, ..., y^(n-1)) reconstructed from state feedback.
/// Throws PfSingularError when |p_f(measured)| <= eps_pf.
double feedback_linearize(const FlatInputSystem& flat, std::span<const double> measured,
                          const ReferenceJet& ref, const ControllerGains& gains,
                          double eps_pf = kDefaultPfGuard);

/// Open-loop flat input u_f* = (y*^(n) - q(ref)) / p_f(ref).
double feedforward_flat_input(const FlatInputSystem& flat, const ReferenceJet& ref,
                              double eps_pf = kDefaultPfGuard);

/// Memory of a discrete compensator.
struct CompensatorState {
    double u_prev = 0.0;  ///< u[k-1]
    double dt = 0.1;      ///< controller interval
    std::uint64_t k = 0;  ///< sample index
};

struct CompensatorOutput {
    double u = 0.0;
    CompensatorState next;
    bool clamped = false;  ///< a square-root or similar argument was clamped
};

/// Discrete realization of p(y, ..., u, ..., u^(m)) = p_f(y, ...) u_f. The
/// jet is either measured or taken from the reference (open-loop prefilter).
using CompensatorFn =
    std::function<CompensatorOutput(std::span<const double> jet, double u_f, const CompensatorState& state)>;

}  // namespace flatin::control
