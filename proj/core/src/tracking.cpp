#include "flatin/tracking.hpp"

#include <cmath>
#include <string>

#include "flatin/errors.hpp"

namespace flatin::control {

namespace {

double guarded_pf(const FlatInputSystem& flat, std::span<const double> jet, double eps_pf) {
    const double pf = flat.p_f(jet);
    if (!(std::abs(pf) > eps_pf)) {
        throw PfSingularError("input coefficient p_f = " + std::to_string(pf) + " is below the guard", pf);
    }
    return pf;
}

}  // namespace

double feedback_linearize(const FlatInputSystem& flat, std::span<const double> measured,
                          const ReferenceJet& ref, const ControllerGains& gains, double eps_pf) {
    const std::size_t n = gains.order();
    if (measured.size() != n || ref.derivs.size() != n + 1) {
        throw InvalidConfigError("jet lengths do not match the controller order " + std::to_string(n));
    }
    const double pf = guarded_pf(flat, measured, eps_pf);

    double v = ref[n];
    for (std::size_t i = 0; i < n; ++i) v += gains[i] * (ref[i] - measured[i]);
    return (v - flat.q(measured)) / pf;
}

double feedforward_flat_input(const FlatInputSystem& flat, const ReferenceJet& ref, double eps_pf) {
    if (ref.derivs.size() < 2) throw InvalidConfigError("reference jet is too short");
    const std::size_t n = ref.order();
    const std::span<const double> jet(ref.derivs.data(), n);
    const double pf = guarded_pf(flat, jet, eps_pf);
    return (ref[n] - flat.q(jet)) / pf;
}

}  // namespace flatin::control
