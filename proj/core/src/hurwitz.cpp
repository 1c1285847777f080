#include "flatin/hurwitz.hpp"

#include <cmath>

#include "flatin/errors.hpp"

namespace flatin::control {

bool hurwitz_check(std::span<const double> lambdas) {
    const std::size_t n = lambdas.size();
    if (n == 0) return true;

    // Coefficients of s^n, s^{n-1}, ..., s^0.
    std::vector<double> a(n + 1);
    a[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) a[i] = lambdas[n - i];
    for (double c : a) {
        if (!std::isfinite(c) || c <= 0.0) return false;
    }

    const std::size_t width = n / 2 + 2;
    std::vector<double> prev(width, 0.0), curr(width, 0.0);
    for (std::size_t j = 0; 2 * j <= n; ++j) prev[j] = a[2 * j];
    for (std::size_t j = 0; 2 * j + 1 <= n; ++j) curr[j] = a[2 * j + 1];

    for (std::size_t row = 2; row <= n; ++row) {
        if (!(curr[0] > 0.0)) return false;
        std::vector<double> next(width, 0.0);
        for (std::size_t j = 0; j + 1 < width; ++j) {
            next[j] = (curr[0] * prev[j + 1] - prev[0] * curr[j + 1]) / curr[0];
        }
        prev = std::move(curr);
        curr = std::move(next);
    }
    return curr[0] > 0.0;
}

ControllerGains::ControllerGains(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw InvalidGainsError("controller gains must not be empty");
    if (!hurwitz_check(lambdas_)) {
        throw InvalidGainsError("controller gains do not give a Hurwitz error polynomial");
    }
}

}  // namespace flatin::control
