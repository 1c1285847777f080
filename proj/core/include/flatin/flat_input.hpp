#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flatin/errors.hpp"
#include "flatin/observability.hpp"
#include "flatin/system.hpp"

namespace flatin {

using ScalarField = std::function<double(const Vector& x)>;
using VectorField = std::function<Vector(const Vector& x)>;
/// Map on an output jet (y, y', ..., y^(n-1)).
using JetMap = std::function<double(std::span<const double> jet)>;

/// alpha(x) = det Q(x), the customary choice of free factor.
ScalarField det_alpha(const SmoothSisoSystem& sys);

/// gamma(x) = alpha(x) Q^{-1}(x) e_n, by LU solve.
///
/// Throws SingularityError (carrying det Q) when Q is not regular and
/// InvalidFactorError when alpha(x) == 0.
Vector construct_flat_input(const SmoothSisoSystem& sys, const Vector& x, const ScalarField& alpha);

/**
 * @brief Plant with its input replaced by a flat input
 *
 *   dx/dt = f(x, 0) + gamma(x) u_f,   y^(n) = q(jet) + p_f(jet) u_f
 */
struct FlatInputSystem {
    SmoothSisoSystem base;
    VectorField gamma;
    ScalarField alpha;
    JetMap q;
    JetMap p_f;

    Vector dynamics(const Vector& x, double u_f) const { return base.f(x, 0.0) + gamma(x) * u_f; }
};

/// Builds a FlatInputSystem whose gamma is evaluated numerically from Q at
/// every point.
FlatInputSystem make_flat_input_system(SmoothSisoSystem base, ScalarField alpha, JetMap q, JetMap p_f);

struct FlatInputReport {
    struct RowResidual {
        double worst = 0.0;
        Vector at;  ///< grid point of the worst residual
    };
    std::vector<RowResidual> rows;  ///< one per observability row k
    double tolerance = 0.0;
    std::size_t points = 0;
    int failed_row = -1;  ///< smallest k exceeding tolerance, -1 if none
    Vector failed_at;

    bool passed() const { return failed_row < 0; }
    double worst() const;
};

class VerificationFailure : public Error {
   public:
    VerificationFailure(const std::string& what, FlatInputReport report)
        : Error(what), report_(std::move(report)) {}
    const FlatInputReport& report() const { return report_; }

   private:
    FlatInputReport report_;
};

/// Checks <grad L_f^k h, gamma> = 0 for k < n-1 and = alpha for k = n-1 at
/// every grid point. Returns the report on success, throws
/// VerificationFailure (carrying it) otherwise. Throws DomainError if a grid
/// point is outside D_o.
FlatInputReport verify_flat_input(const SmoothSisoSystem& sys, const VectorField& gamma,
                                  const ScalarField& alpha, std::span<const Vector> grid,
                                  double tol = 1e-10);

}  // namespace flatin
