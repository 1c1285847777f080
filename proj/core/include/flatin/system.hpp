#pragma once

#include <cstddef>
#include <functional>

#include "flatin/types.hpp"

namespace flatin {

/**
 * @brief Smooth single-input single-output plant
 *
 *   dx/dt = f(x, u),   y = h(x)
 *
 * The optional `jet` returns the stacked Lie derivatives
 * (h, L_f h, ..., L_f^{n-1} h) along the drift f(x, 0). When `jet_jacobian`
 * is also supplied, the observability matrix is taken from it directly and
 * no finite differences are involved.
 */
struct SmoothSisoSystem {
    using Dynamics = std::function<Vector(const Vector& x, double u)>;
    using Output = std::function<double(const Vector& x)>;
    using Jet = std::function<Vector(const Vector& x)>;
    using JetJacobian = std::function<Matrix(const Vector& x)>;
    using Predicate = std::function<bool(const Vector& x)>;

    std::size_t n = 0;
    Dynamics f;
    Output h;
    Jet jet;
    JetJacobian jet_jacobian;
    Predicate domain_obs;   ///< empty means "everywhere"
    Predicate domain_ctrl;  ///< empty means "everywhere"
    std::size_t m = 0;      ///< order of the internal dynamics, n - r
    double eps_reg = 1e-9;  ///< regularity threshold on |det Q|

    bool in_obs_domain(const Vector& x) const { return !domain_obs || domain_obs(x); }
    bool in_ctrl_domain(const Vector& x) const { return !domain_ctrl || domain_ctrl(x); }
};

/// Throws InvalidConfigError if the system is structurally incomplete.
void validate(const SmoothSisoSystem& sys);

}  // namespace flatin
