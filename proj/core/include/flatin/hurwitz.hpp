#pragma once

#include <span>
#include <vector>

namespace flatin::control {

/// True iff s^n + l_{n-1} s^{n-1} + ... + l_0 has all roots in the open left
/// half plane. `lambdas` is ordered (l_0, ..., l_{n-1}). Routh array, no root
/// finding; a zero anywhere in the first column counts as not Hurwitz.
bool hurwitz_check(std::span<const double> lambdas);

/// Error-dynamics gains (l_0, ..., l_{n-1}), validated at construction.
class ControllerGains {
   public:
    /// Throws InvalidGainsError if empty, non-finite, or not Hurwitz.
    explicit ControllerGains(std::vector<double> lambdas);

    std::span<const double> lambdas() const { return lambdas_; }
    std::size_t order() const { return lambdas_.size(); }
    double operator[](std::size_t i) const { return lambdas_[i]; }

   private:
    std::vector<double> lambdas_;
};

}  // namespace flatin::control
