#include "flatin/flat_input.hpp"

#include <cmath>
#include <sstream>

namespace flatin {

namespace {

std::string format_point(const Vector& x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
    os << ')';
    return os.str();
}

}  // namespace

ScalarField det_alpha(const SmoothSisoSystem& sys) {
    return [sys](const Vector& x) { return observability_matrix(sys, x).det; };
}

Vector construct_flat_input(const SmoothSisoSystem& sys, const Vector& x, const ScalarField& alpha) {
    const ObservabilityData obs = observability_matrix(sys, x);
    if (!obs.regular) {
        throw SingularityError("observability matrix is singular at " + format_point(x), obs.det);
    }
    const double a = alpha ? alpha(x) : obs.det;
    if (a == 0.0 || !std::isfinite(a)) {
        throw InvalidFactorError("free factor alpha vanishes at " + format_point(x));
    }
    Vector rhs = Vector::Zero(static_cast<Eigen::Index>(sys.n));
    rhs(rhs.size() - 1) = a;
    return obs.Q.partialPivLu().solve(rhs);
}

FlatInputSystem make_flat_input_system(SmoothSisoSystem base, ScalarField alpha, JetMap q, JetMap p_f) {
    validate(base);
    if (!alpha) alpha = det_alpha(base);
    FlatInputSystem flat;
    flat.gamma = [base, alpha](const Vector& x) { return construct_flat_input(base, x, alpha); };
    flat.base = std::move(base);
    flat.alpha = std::move(alpha);
    flat.q = std::move(q);
    flat.p_f = std::move(p_f);
    return flat;
}

double FlatInputReport::worst() const {
    double w = 0.0;
    for (const auto& r : rows) w = std::max(w, r.worst);
    return w;
}

FlatInputReport verify_flat_input(const SmoothSisoSystem& sys, const VectorField& gamma,
                                  const ScalarField& alpha, std::span<const Vector> grid, double tol) {
    validate(sys);
    const auto n = static_cast<Eigen::Index>(sys.n);

    FlatInputReport report;
    report.tolerance = tol;
    report.rows.resize(sys.n);

    for (const Vector& x : grid) {
        if (!sys.in_obs_domain(x)) {
            throw DomainError("grid point " + format_point(x) + " is outside the observability domain");
        }
        const ObservabilityData obs = observability_matrix(sys, x);
        const Vector g = gamma(x);
        if (g.size() != n) throw InvalidConfigError("flat input field has wrong dimension");
        Vector residual = obs.Q * g;
        residual(n - 1) -= alpha(x);

        for (Eigen::Index k = 0; k < n; ++k) {
            const double r = std::abs(residual(k));
            auto& row = report.rows[static_cast<std::size_t>(k)];
            if (row.at.size() == 0 || r > row.worst) {
                row.worst = r;
                row.at = x;
            }
            if (!(r <= tol) && (report.failed_row < 0 || k < report.failed_row)) {
                report.failed_row = static_cast<int>(k);
                report.failed_at = x;
            }
        }
        ++report.points;
    }

    if (!report.passed()) {
        std::ostringstream os;
        os << "flat input property violated in row " << report.failed_row << " at "
           << format_point(report.failed_at) << " (worst residual "
           << report.rows[static_cast<std::size_t>(report.failed_row)].worst << ", tolerance " << tol << ')';
        throw VerificationFailure(os.str(), std::move(report));
    }
    return report;
}

}  // namespace flatin
