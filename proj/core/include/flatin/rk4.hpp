#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "flatin/errors.hpp"
#include "flatin/types.hpp"

namespace flatin::sim {

namespace detail {

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& x, double a, const std::array<double, N>& d) {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = x[i] + a * d[i];
    return out;
}

template <typename Derived>
auto axpy(const Eigen::MatrixBase<Derived>& x, double a, const Eigen::MatrixBase<Derived>& d) {
    return (x + a * d).eval();
}

inline double axpy(double x, double a, double d) { return x + a * d; }

template <std::size_t N>
bool finite(const std::array<double, N>& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

template <typename Derived>
bool finite(const Eigen::MatrixBase<Derived>& x) {
    return x.allFinite();
}

inline bool finite(double x) { return std::isfinite(x); }

template <std::size_t N>
std::vector<double> to_std(const std::array<double, N>& x) {
    return {x.begin(), x.end()};
}

template <typename Derived>
std::vector<double> to_std(const Eigen::MatrixBase<Derived>& x) {
    return {x.derived().data(), x.derived().data() + x.size()};
}

inline std::vector<double> to_std(double x) { return {x}; }

}  // namespace detail

/**
 * @brief One classical fourth-order Runge-Kutta step with the input held
 *
 * `State` may be a std::array<double, N>, a fixed or dynamic Eigen vector,
 * or a plain double; `deriv(x, u)` must return the same type.
 * Throws NumericsError (carrying x) if the result is not finite.
 */
template <typename Deriv, typename State>
State rk4_step(Deriv&& deriv, const State& x, double u, double h) {
    if (!(h > 0.0)) throw InvalidConfigError("integration step must be positive");
    using detail::axpy;
    const State k1 = deriv(x, u);
    const State k2 = deriv(axpy(x, 0.5 * h, k1), u);
    const State k3 = deriv(axpy(x, 0.5 * h, k2), u);
    const State k4 = deriv(axpy(x, h, k3), u);

    State out = x;
    if constexpr (std::is_same_v<State, double>) {
        out = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else {
        for (std::size_t i = 0; i < static_cast<std::size_t>(std::size(out)); ++i) {
            out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    if (!detail::finite(out)) throw NumericsError("integration produced a non-finite state", detail::to_std(x));
    return out;
}

}  // namespace flatin::sim
