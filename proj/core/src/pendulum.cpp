#include "flatin/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flatin/errors.hpp"

namespace flatin::pendulum {

namespace {

// 1 - (ddy - y u^2)^2, i.e. sin^2 x3, clamped to [0, 1].
double root_argument(const PendulumJet& jet, double u, bool& clamped) {
    const double c = jet.ddy - jet.y * u * u;
    const double arg = 1.0 - c * c;
    clamped = !(arg >= 0.0 && arg <= 1.0);
    return std::clamp(arg, 0.0, 1.0);
}

}  // namespace

std::array<double, 3> dynamics(const PendulumState& x, double u) {
    return {x.x2, -cos_angle(x.x3) + x.x1 * u * u, u};
}

std::array<double, 3> flat_dynamics(const PendulumState& x, double u_f) {
    return {x.x2, -cos_angle(x.x3), std::sin(x.x3) * u_f};
}

std::array<double, 3> to_canonical(const PendulumState& x) { return {x.x1, x.x2, -cos_angle(x.x3)}; }

PendulumState from_canonical(std::span<const double, 3> xi) {
    if (!(std::abs(xi[2]) < 1.0)) {
        throw DomainError("canonical coordinate xi3 = " + std::to_string(xi[2]) +
                          " leaves the observable band |xi3| < 1");
    }
    return {xi[0], xi[1], std::acos(-xi[2])};
}

PendulumJet output_jet(const PendulumState& x, double u_applied) {
    return {x.x1, x.x2, -cos_angle(x.x3) + x.x1 * u_applied * u_applied};
}

control::CompensatorOutput compensator_step(const PendulumJet& jet, double u_f,
                                            const control::CompensatorState& state, double eps_den) {
    if (!(state.dt > 0.0)) throw InvalidConfigError("compensator interval must be positive");
    const double up = state.u_prev;
    const double dt = state.dt;

    control::CompensatorOutput out;
    const double root = std::sqrt(root_argument(jet, up, out.clamped));
    const double num = (1.0 - jet.ddy * jet.ddy) * u_f + 2.0 * jet.y * up * up / dt;
    const double den = jet.dy * up + 2.0 * jet.y * up / dt + root;
    if (!(std::abs(den) > eps_den)) {
        throw CompensatorSingularError("compensator denominator " + std::to_string(den) + " below guard", den);
    }
    out.u = num / den;
    out.next = {out.u, dt, state.k + 1};
    return out;
}

control::CompensatorFn compensator(double eps_den) {
    return [eps_den](std::span<const double> jet, double u_f, const control::CompensatorState& state) {
        if (jet.size() != 3) throw InvalidConfigError("pendulum compensator expects a jet of length 3");
        return compensator_step({jet[0], jet[1], jet[2]}, u_f, state, eps_den);
    };
}

ResidualResult continuous_compensator_residual(const PendulumJet& jet, double u, double du, double u_f) {
    ResidualResult r;
    const double root = std::sqrt(root_argument(jet, u, r.clamped));
    const double lhs = jet.dy * u * u + 2.0 * jet.y * u * du + root * u;
    r.value = lhs - (1.0 - jet.ddy * jet.ddy) * u_f;
    return r;
}

FlatParameterization flat_parameterization(std::span<const double, 4> jet4, double eps_pf) {
    const double pf = 1.0 - jet4[2] * jet4[2];
    FlatParameterization out;
    out.state = from_canonical(std::span<const double, 3>(jet4.data(), 3));
    if (!(std::abs(pf) > eps_pf)) {
        throw PfSingularError("1 - ddy^2 = " + std::to_string(pf) + " is below the guard", pf);
    }
    out.u_f = jet4[3] / pf;
    return out;
}

SmoothSisoSystem make_system() {
    SmoothSisoSystem sys;
    sys.n = 3;
    sys.m = 1;
    sys.f = [](const Vector& x, double u) {
        const auto d = dynamics(PendulumState::from_vector(x), u);
        return Vector{{d[0], d[1], d[2]}};
    };
    sys.h = [](const Vector& x) { return x(0); };
    sys.jet = [](const Vector& x) { return Vector{{x(0), x(1), -cos_angle(x(2))}}; };
    sys.jet_jacobian = [](const Vector& x) {
        Matrix q = Matrix::Identity(3, 3);
        q(2, 2) = std::sin(x(2));
        return q;
    };
    sys.domain_obs = [](const Vector& x) { return in_observable_domain(x(2)); };
    return sys;
}

FlatInputSystem make_flat_input_system() {
    FlatInputSystem flat;
    flat.base = make_system();
    flat.gamma = [](const Vector& x) { return Vector{{0.0, 0.0, std::sin(x(2))}}; };
    flat.alpha = [](const Vector& x) {
        const double s = std::sin(x(2));
        return s * s;
    };
    flat.q = [](std::span<const double>) { return 0.0; };
    flat.p_f = [](std::span<const double> jet) { return 1.0 - jet[2] * jet[2]; };
    return flat;
}

}  // namespace flatin::pendulum
