#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace flatin::control {

/// Reference output and its time derivatives (y*, y*', ..., y*^(n)) at t.
struct ReferenceJet {
    double t = 0.0;
    std::vector<double> derivs;

    std::size_t order() const { return derivs.empty() ? 0 : derivs.size() - 1; }
    double operator[](std::size_t i) const { return derivs[i]; }
};

struct Hold {
    double value = 0.0;
};

/// Rest-to-rest transition y = from + (to - from) * (35s^4 - 84s^5 + 70s^6 - 20s^7),
/// s = (t - t_start) / (t_end - t_start). Derivatives up to third order vanish
/// at both ends.
struct Poly7 {
    double from = 0.0;
    double to = 0.0;
};

struct Segment {
    double t_start = 0.0;
    double t_end = 0.0;
    std::variant<Hold, Poly7> shape;

    double start_value() const;
    double end_value() const;
};

/**
 * @brief Piecewise reference built from holds and degree-7 transitions
 *
 * Segments must be contiguous (t_end of one equals t_start of the next) and
 * value-continuous, which makes y*(t) C^3 across joints.
 */
class ReferenceTrajectory {
   public:
    /// Throws InvalidConfigError on an empty list, a non-positive span, a
    /// gap/overlap, or a value jump at a joint.
    explicit ReferenceTrajectory(std::vector<Segment> segments);

    /// Constant reference over [t_start, t_end].
    static ReferenceTrajectory constant(double value, double t_start, double t_end);

    const std::vector<Segment>& segments() const { return segments_; }
    double t_start() const { return segments_.front().t_start; }
    double t_end() const { return segments_.back().t_end; }

   private:
    std::vector<Segment> segments_;
};

/// Exact derivatives of the trajectory up to order n at t. Times outside the
/// horizon are clamped to the nearest endpoint. At a joint the segment that
/// starts there is used; both sides agree through the third derivative.
ReferenceJet reference_jet(const ReferenceTrajectory& traj, double t, std::size_t n);

}  // namespace flatin::control
