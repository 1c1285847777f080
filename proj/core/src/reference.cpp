#include "flatin/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "flatin/errors.hpp"

namespace flatin::control {

namespace {

// Coefficients of p(s) = 35s^4 - 84s^5 + 70s^6 - 20s^7, index = power.
constexpr std::array<double, 8> kPoly7 = {0, 0, 0, 0, 35, -84, 70, -20};

// d^k p / ds^k at s, Horner on the differentiated coefficients.
double poly7_derivative(std::size_t k, double s) {
    if (k > 7) return 0.0;
    double acc = 0.0;
    for (std::size_t p = 7 + 1; p-- > k;) {
        double c = kPoly7[p];
        for (std::size_t j = 0; j < k; ++j) c *= static_cast<double>(p - j);
        acc = acc * s + c;
    }
    return acc;
}

}  // namespace

double Segment::start_value() const {
    return std::visit(
        [](const auto& s) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Hold>) {
                return s.value;
            } else {
                return s.from;
            }
        },
        shape);
}

double Segment::end_value() const {
    return std::visit(
        [](const auto& s) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Hold>) {
                return s.value;
            } else {
                return s.to;
            }
        },
        shape);
}

ReferenceTrajectory::ReferenceTrajectory(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw InvalidConfigError("trajectory needs at least one segment");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& seg = segments_[i];
        if (!std::isfinite(seg.t_start) || !std::isfinite(seg.t_end) || !(seg.t_end > seg.t_start)) {
            throw InvalidConfigError("segment " + std::to_string(i) + " has an empty or invalid time span");
        }
        if (!std::isfinite(seg.start_value()) || !std::isfinite(seg.end_value())) {
            throw InvalidConfigError("segment " + std::to_string(i) + " has a non-finite value");
        }
        if (i == 0) continue;
        const Segment& before = segments_[i - 1];
        if (before.t_end != seg.t_start) {
            throw InvalidConfigError("segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                     " are not contiguous");
        }
        if (before.end_value() != seg.start_value()) {
            throw InvalidConfigError("value jump between segments " + std::to_string(i - 1) + " and " +
                                     std::to_string(i));
        }
    }
}

ReferenceTrajectory ReferenceTrajectory::constant(double value, double t_start, double t_end) {
    return ReferenceTrajectory({Segment{t_start, t_end, Hold{value}}});
}

ReferenceJet reference_jet(const ReferenceTrajectory& traj, double t, std::size_t n) {
    const auto& segs = traj.segments();
    const double tc = std::clamp(t, traj.t_start(), traj.t_end());

    auto it = std::upper_bound(segs.begin(), segs.end(), tc,
                               [](double value, const Segment& s) { return value < s.t_start; });
    const Segment& seg = *std::prev(it);

    ReferenceJet jet;
    jet.t = t;
    jet.derivs.assign(n + 1, 0.0);

    if (const auto* hold = std::get_if<Hold>(&seg.shape)) {
        jet.derivs[0] = hold->value;
        return jet;
    }

    const auto& tr = std::get<Poly7>(seg.shape);
    const double span = seg.t_end - seg.t_start;
    const double s = std::clamp((tc - seg.t_start) / span, 0.0, 1.0);
    const double p = poly7_derivative(0, s);
    // Blend form returns the endpoint values exactly at s = 0 and s = 1.
    jet.derivs[0] = (1.0 - p) * tr.from + p * tr.to;
    const double delta = tr.to - tr.from;
    double scale = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        scale /= span;
        jet.derivs[k] = delta * poly7_derivative(k, s) * scale;
    }
    return jet;
}

}  // namespace flatin::control
