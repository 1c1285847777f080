#include "flatin/observability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "flatin/errors.hpp"

namespace flatin {

void validate(const SmoothSisoSystem& sys) {
    if (sys.n == 0) throw InvalidConfigError("system dimension must be positive");
    if (!sys.f || !sys.h) throw InvalidConfigError("system requires both f and h");
    if (sys.m >= sys.n) throw InvalidConfigError("internal dynamics order must satisfy m < n");
    if (!(sys.eps_reg > 0.0)) throw InvalidConfigError("regularity threshold must be positive");
}

namespace {

void require_obs_domain(const SmoothSisoSystem& sys, const Vector& x) {
    if (x.size() != static_cast<Eigen::Index>(sys.n)) {
        throw DomainError("state has dimension " + std::to_string(x.size()) + ", expected " +
                          std::to_string(sys.n));
    }
    if (!all_finite(x)) throw DomainError("state is not finite");
    if (!sys.in_obs_domain(x)) throw DomainError("state outside the observability domain");
}

std::vector<double> as_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Central-difference gradient of a scalar function. The divisor uses the
// realized spacing xp_i - xm_i rather than the nominal step.
template <typename Fn>
Vector central_gradient(Fn&& fn, const Vector& x, double base) {
    Vector grad(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double step = base * std::max(1.0, std::abs(x(i)));
        Vector xp = x;
        Vector xm = x;
        xp(i) += step;
        xm(i) -= step;
        grad(i) = (fn(xp) - fn(xm)) / (xp(i) - xm(i));
    }
    return grad;
}

}  // namespace

namespace detail {

double fd_step(int depth) {
    const double eps = std::numeric_limits<double>::epsilon();
    return std::pow(eps, 1.0 / (std::max(depth, 1) + 2.0));
}

double lie_derivative_fd(const SmoothSisoSystem& sys, const Vector& x, int k, int depth) {
    if (k == 0) return sys.h(x);

    const Vector drift = sys.f(x, 0.0);
    if (!all_finite(drift)) throw NumericsError("drift f(x, 0) is not finite", as_std(x));
    const double drift_norm = drift.lpNorm<Eigen::Infinity>();
    if (drift_norm == 0.0) return 0.0;

    const double delta =
        fd_step(depth) * std::max(1.0, x.lpNorm<Eigen::Infinity>()) / std::max(1.0, drift_norm);
    const Vector xp = x + delta * drift;
    const Vector xm = x - delta * drift;
    return (lie_derivative_fd(sys, xp, k - 1, depth) - lie_derivative_fd(sys, xm, k - 1, depth)) /
           (2.0 * delta);
}

}  // namespace detail

Vector lie_derivatives(const SmoothSisoSystem& sys, const Vector& x) {
    validate(sys);
    require_obs_domain(sys, x);

    Vector out;
    if (sys.jet) {
        out = sys.jet(x);
        if (out.size() != static_cast<Eigen::Index>(sys.n)) {
            throw InvalidConfigError("analytic jet has wrong length");
        }
    } else {
        out.resize(static_cast<Eigen::Index>(sys.n));
        for (int k = 0; k < static_cast<int>(sys.n); ++k) {
            out(k) = detail::lie_derivative_fd(sys, x, k, k);
        }
    }
    if (!all_finite(out)) throw NumericsError("Lie derivative is not finite", as_std(x));
    return out;
}

ObservabilityData observability_matrix(const SmoothSisoSystem& sys, const Vector& x) {
    validate(sys);
    require_obs_domain(sys, x);

    const auto n = static_cast<Eigen::Index>(sys.n);
    ObservabilityData data;
    if (sys.jet_jacobian) {
        data.Q = sys.jet_jacobian(x);
        if (data.Q.rows() != n || data.Q.cols() != n) {
            throw InvalidConfigError("analytic jet Jacobian has wrong shape");
        }
    } else if (sys.jet) {
        data.Q.resize(n, n);
        const double base = detail::fd_step(1);
        for (Eigen::Index i = 0; i < n; ++i) {
            Vector xp = x;
            Vector xm = x;
            const double step = base * std::max(1.0, std::abs(x(i)));
            xp(i) += step;
            xm(i) -= step;
            data.Q.col(i) = (sys.jet(xp) - sys.jet(xm)) / (xp(i) - xm(i));
        }
    } else {
        data.Q.resize(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const int depth = static_cast<int>(k) + 1;
            auto row_fn = [&](const Vector& p) {
                return detail::lie_derivative_fd(sys, p, static_cast<int>(k), depth);
            };
            data.Q.row(k) = central_gradient(row_fn, x, detail::fd_step(depth)).transpose();
        }
    }

    if (!all_finite(data.Q)) throw NumericsError("observability matrix is not finite", as_std(x));
    data.det = data.Q.partialPivLu().determinant();
    data.regular = std::abs(data.det) > sys.eps_reg;
    return data;
}

}  // namespace flatin
