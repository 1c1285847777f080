#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "flatin/flat_input.hpp"
#include "flatin/system.hpp"
#include "flatin/tracking.hpp"

/**
 * Variable-length pendulum in normed units (g = 1):
 *
 *   x1' = x2
 *   x2' = -cos x3 + x1 u^2
 *   x3' = u
 *
 * y = x1 is the ball distance from the pivot, x3 the rod angle from the
 * vertical, u the rod's angular rate. The relative degree drops from 3 to 2
 * away from x1 = 0, so the plant is driven through a flat input and a
 * discrete dynamic compensator instead of direct feedback linearization.
 */
namespace flatin::pendulum {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Denominator guard of the discrete compensator.
inline constexpr double kDefaultDenominatorGuard = 1e-8;

struct PendulumState {
    double x1 = 1.0;  ///< ball distance from pivot
    double x2 = 0.0;  ///< ball speed
    double x3 = kHalfPi;  ///< rod angle from vertical [rad]

    Vector to_vector() const { return (Vector(3) << x1, x2, x3).finished(); }
    static PendulumState from_vector(const Vector& v) { return {v(0), v(1), v(2)}; }
    bool operator==(const PendulumState&) const = default;
};

/// Output y and its first two derivatives rebuilt from the state.
struct PendulumJet {
    double y = 0.0;
    double dy = 0.0;
    double ddy = 0.0;

    std::array<double, 3> as_array() const { return {y, dy, ddy}; }
    /// |ddy| < 1 keeps 1 - ddy^2 positive and the compensator's root real.
    bool in_range() const { return ddy > -1.0 && ddy < 1.0; }
};

/// cos x3 written as sin(pi/2 - x3), so the double nearest pi/2 is an exact
/// equilibrium.
inline double cos_angle(double x3) { return std::sin(kHalfPi - x3); }

/// Membership in D_o: 0 < x3 < pi.
inline bool in_observable_domain(double x3) { return x3 > 0.0 && x3 < std::numbers::pi; }

std::array<double, 3> dynamics(const PendulumState& x, double u);

/// Flat-input companion: x3' = sin(x3) u_f, no centrifugal term.
std::array<double, 3> flat_dynamics(const PendulumState& x, double u_f);

/// xi = (x1, x2, -cos x3).
std::array<double, 3> to_canonical(const PendulumState& x);

/// Inverse of to_canonical with the arccos branch in (0, pi). DomainError for |xi3| >= 1.
PendulumState from_canonical(std::span<const double, 3> xi);

/// (x1, x2, -cos x3 + x1 u^2) with u the control sample currently held.
PendulumJet output_jet(const PendulumState& x, double u_applied);

/**
 * @brief One sample of the backward-difference compensator
 *
 * u[k] = ((1 - ddy^2) u_f + 2 y u[k-1]^2 / dt)
 *        / (dy u[k-1] + 2 y u[k-1] / dt + sqrt(1 - (ddy - y u[k-1]^2)^2))
 *
 * The root argument is clamped to [0, 1] (reported through `clamped`).
 * Throws CompensatorSingularError if |denominator| <= eps_den.
 */
control::CompensatorOutput compensator_step(const PendulumJet& jet, double u_f,
                                            const control::CompensatorState& state,
                                            double eps_den = kDefaultDenominatorGuard);

/// Same as compensator_step, wrapped in the generic compensator contract.
control::CompensatorFn compensator(double eps_den = kDefaultDenominatorGuard);

struct ResidualResult {
    double value = 0.0;
    bool clamped = false;
};

/// LHS - RHS of the continuous compensator equation
///   dy u^2 + 2 y u du + sqrt(1 - (ddy - y u^2)^2) u = (1 - ddy^2) u_f
ResidualResult continuous_compensator_residual(const PendulumJet& jet, double u, double du, double u_f);

struct FlatParameterization {
    PendulumState state;
    double u_f = 0.0;
};

/// States and flat input of the flat-input pendulum from (y, y', y'', y''').
FlatParameterization flat_parameterization(std::span<const double, 4> jet4,
                                           double eps_pf = control::kDefaultPfGuard);

/// Plant as a SmoothSisoSystem with analytic jet and jet Jacobian.
SmoothSisoSystem make_system();

/// Flat-input pendulum: gamma = (0, 0, sin x3), alpha = sin^2 x3, q = 0,
/// p_f = 1 - ddy^2.
FlatInputSystem make_flat_input_system();

}  // namespace flatin::pendulum
