#pragma once

#include "flatin/system.hpp"
#include "flatin/types.hpp"

namespace flatin {

struct ObservabilityData {
    Matrix Q;
    double det = 0.0;
    bool regular = false;
};

/// Stacked Lie derivatives (h, L_f h, ..., L_f^{n-1} h) at x with u = 0.
///
/// Uses `sys.jet` when present; otherwise nested central differences along
/// the drift direction. Throws DomainError outside D_o and NumericsError on
/// non-finite intermediates.
Vector lie_derivatives(const SmoothSisoSystem& sys, const Vector& x);

/// Observability matrix Q(x), rows are the gradients of L_f^k h.
ObservabilityData observability_matrix(const SmoothSisoSystem& sys, const Vector& x);

namespace detail {

/// Base finite-difference step for `depth` nested central differences,
/// eps^(1/(depth+2)). depth = 1 gives the usual cbrt(eps).
double fd_step(int depth);

/// L_f^k h at x by nested directional central differences; `depth` is the
/// total nesting the caller will apply (>= k).
double lie_derivative_fd(const SmoothSisoSystem& sys, const Vector& x, int k, int depth);

}  // namespace detail

}  // namespace flatin
