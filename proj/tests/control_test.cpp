#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "flatin/errors.hpp"
#include "flatin/hurwitz.hpp"
#include "flatin/pendulum.hpp"
#include "flatin/reference.hpp"
#include "flatin/tracking.hpp"
#include "oracles.hpp"

namespace flatin::control {
namespace {

ReferenceTrajectory poly7(double t0, double t1, double from, double to) {
    return ReferenceTrajectory({{t0, t1, Poly7{from, to}}});
}

ReferenceJet jet(std::vector<double> d) { return {0.0, std::move(d)}; }

TEST(ReferenceJet, Poly7Midpoint) {
    const auto j = reference_jet(poly7(0.0, 1.0, 0.0, 1.0), 0.5, 3);
    EXPECT_DOUBLE_EQ(j[0], 0.5);
    EXPECT_DOUBLE_EQ(j[1], 2.1875);
    EXPECT_NEAR(j[2], 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(j[3], -52.5);
}

TEST(ReferenceJet, Poly7ScalesWithSpan) {
    const auto j = reference_jet(poly7(0.0, 10.0, 1.0, 2.0), 5.0, 3);
    EXPECT_DOUBLE_EQ(j[0], 1.5);
    EXPECT_DOUBLE_EQ(j[1], 0.21875);
    EXPECT_DOUBLE_EQ(j[3], -0.0525);
}

TEST(ReferenceJet, Poly7Endpoint) {
    const auto j = reference_jet(poly7(0.0, 1.0, 0.0, 1.0), 1.0, 3);
    EXPECT_EQ(j.derivs, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
    EXPECT_EQ(j.order(), 3u);
}

TEST(ReferenceJet, Hold) {
    const auto traj = ReferenceTrajectory::constant(2.0, 0.0, 5.0);
    for (double t : {0.0, 1.3, 5.0}) {
        EXPECT_EQ(reference_jet(traj, t, 3).derivs, (std::vector<double>{2.0, 0.0, 0.0, 0.0}));
    }
}

TEST(ReferenceJet, ClampsOutsideHorizon) {
    const auto traj = poly7(1.0, 2.0, 0.0, 1.0);
    EXPECT_EQ(reference_jet(traj, -4.0, 3).derivs, reference_jet(traj, 1.0, 3).derivs);
    EXPECT_EQ(reference_jet(traj, 9.0, 3).derivs, reference_jet(traj, 2.0, 3).derivs);
    EXPECT_EQ(reference_jet(traj, 9.0, 3)[0], 1.0);
}

ReferenceTrajectory round_trip() {
    return ReferenceTrajectory({{0.0, 2.0, Poly7{1.0, 0.3}}, {2.0, 3.0, Hold{0.3}}, {3.0, 4.5, Poly7{0.3, 1.7}}});
}

TEST(ReferenceJet, MatchesCentralDifferences) {
    const auto traj = round_trip();
    const double h = 1e-4;
    for (double t : {0.3, 0.9, 1.7, 2.5, 3.2, 3.9, 4.4}) {
        const auto j = reference_jet(traj, t, 4);
        for (std::size_t k = 0; k < 4; ++k) {
            const double fd = oracle::central_diff([&](double s) { return reference_jet(traj, s, 4)[k]; }, t, h);
            EXPECT_LE(std::abs(fd - j[k + 1]), 1e-6 * std::max(1.0, std::abs(j[k + 1])))
                << "t=" << t << " order " << k + 1;
        }
    }
}

TEST(ReferenceJet, JointsAreExactlyContinuous) {
    const auto traj = round_trip();
    for (const auto& seg : traj.segments()) {
        if (seg.t_start == traj.t_start()) continue;
        const double t = seg.t_start;
        const auto right = reference_jet(traj, t, 3);
        // The left-hand value is the previous segment evaluated on its own at its end.
        const Segment* prev = nullptr;
        for (const auto& s : traj.segments())
            if (s.t_end == t) prev = &s;
        ASSERT_NE(prev, nullptr);
        const auto from_left = reference_jet(ReferenceTrajectory({*prev}), t, 3);
        EXPECT_EQ(from_left.derivs, right.derivs) << "joint at t=" << t;
    }
}

TEST(ReferenceTrajectory, RejectsMalformedSegmentLists) {
    EXPECT_THROW(ReferenceTrajectory({}), InvalidConfigError);
    EXPECT_THROW(ReferenceTrajectory({{1.0, 1.0, Hold{0.0}}}), InvalidConfigError);
    EXPECT_THROW(ReferenceTrajectory({{0.0, 1.0, Hold{0.0}}, {1.5, 2.0, Hold{0.0}}}), InvalidConfigError);
    EXPECT_THROW(ReferenceTrajectory({{0.0, 1.0, Hold{0.0}}, {0.5, 2.0, Hold{0.0}}}), InvalidConfigError);
    EXPECT_THROW(ReferenceTrajectory({{0.0, 1.0, Hold{0.0}}, {1.0, 2.0, Poly7{0.5, 1.0}}}), InvalidConfigError);
    EXPECT_THROW(ReferenceTrajectory({{0.0, 1.0, Hold{std::nan("")}}}), InvalidConfigError);
}

TEST(Hurwitz, Examples) {
    EXPECT_TRUE(hurwitz_check(std::array{2.0, 6.0, 4.0}));
    EXPECT_FALSE(hurwitz_check(std::array{-1.0, 1.0, 1.0}));
    EXPECT_TRUE(hurwitz_check(std::array{1.0, 1.0}));
    EXPECT_TRUE(hurwitz_check(std::array{3.0}));
    EXPECT_FALSE(hurwitz_check(std::array{0.0}));
    // s^3 + s^2 + s + 1 has roots on the imaginary axis.
    EXPECT_FALSE(hurwitz_check(std::array{1.0, 1.0, 1.0}));
    // Routh: 4*6 = 24 > 25 fails.
    EXPECT_FALSE(hurwitz_check(std::array{25.0, 6.0, 4.0}));
}

TEST(Hurwitz, AgreesWithRootFinding) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-1.0, 6.0);
    std::uniform_int_distribution<int> order(1, 6);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> l(static_cast<std::size_t>(order(rng)));
        for (auto& v : l) v = coef(rng);
        const double re = oracle::dominant_real_part(l);
        // Skip polynomials with roots too close to the axis to classify robustly.
        if (std::abs(re) < 1e-6) continue;
        EXPECT_EQ(hurwitz_check(l), re < 0.0) << "order " << l.size() << " trial " << trial;
        ++checked;
    }
    EXPECT_GT(checked, 1900);
}

TEST(ControllerGains, ValidatesAtConstruction) {
    const ControllerGains g({2.0, 6.0, 4.0});
    EXPECT_EQ(g.order(), 3u);
    EXPECT_EQ(g[1], 6.0);
    EXPECT_THROW(ControllerGains({}), InvalidGainsError);
    EXPECT_THROW(ControllerGains({-2.0, 6.0, 4.0}), InvalidGainsError);
    EXPECT_THROW(ControllerGains({2.0, 6.0, std::nan("")}), InvalidGainsError);
}

const ControllerGains kDefaultGains({2.0, 6.0, 4.0});

TEST(FeedbackLinearize, ZeroErrorGivesZeroInput) {
    const auto flat = pendulum::make_flat_input_system();
    const std::array measured{1.0, 0.0, 0.0};
    EXPECT_EQ(feedback_linearize(flat, measured, jet({1.0, 0.0, 0.0, 0.0}), kDefaultGains), 0.0);
}

TEST(FeedbackLinearize, PendulumExamples) {
    const auto flat = pendulum::make_flat_input_system();
    const auto ref = jet({1.1, 0.0, 0.0, 0.0});
    EXPECT_NEAR(feedback_linearize(flat, std::array{1.0, 0.0, 0.0}, ref, kDefaultGains), 0.2, 1e-15);
    // Same position and velocity error but measured ddy = 0.5; reference ddy matches so its error is zero.
    const auto ref2 = jet({1.1, 0.0, 0.5, 0.0});
    EXPECT_NEAR(feedback_linearize(flat, std::array{1.0, 0.0, 0.5}, ref2, kDefaultGains), 0.2 / 0.75, 1e-15);
}

TEST(FeedbackLinearize, GuardsSingularInputCoefficient) {
    const auto flat = pendulum::make_flat_input_system();
    try {
        feedback_linearize(flat, std::array{1.0, 0.0, 1.0}, jet({1.0, 0.0, 1.0, 0.0}), kDefaultGains);
        FAIL() << "expected PfSingularError";
    } catch (const PfSingularError& e) {
        EXPECT_EQ(e.pf(), 0.0);
    }
    EXPECT_THROW(feedback_linearize(flat, std::array{1.0, 0.0}, jet({1.0, 0.0, 0.0, 0.0}), kDefaultGains),
                 InvalidConfigError);
}

TEST(FeedforwardFlatInput, Examples) {
    const auto flat = pendulum::make_flat_input_system();
    EXPECT_EQ(feedforward_flat_input(flat, jet({1.0, 0.0, 0.0, 0.0})), 0.0);
    EXPECT_EQ(feedforward_flat_input(flat, jet({1.0, 0.0, 0.0, 0.3})), 0.3);
    EXPECT_NEAR(feedforward_flat_input(flat, jet({1.0, 0.0, 0.6, 0.3})), 0.46875, 1e-15);
    EXPECT_THROW(feedforward_flat_input(flat, jet({1.0, 0.0, -1.0, 0.3})), PfSingularError);
}

TEST(FeedforwardFlatInput, EqualsFeedbackOnReference) {
    const auto flat = pendulum::make_flat_input_system();
    const auto traj = round_trip();
    for (double t = 0.0; t <= 4.5; t += 0.05) {
        const auto ref = reference_jet(traj, t, 3);
        const std::array measured{ref[0], ref[1], ref[2]};
        EXPECT_EQ(feedforward_flat_input(flat, ref), feedback_linearize(flat, measured, ref, kDefaultGains));
    }
}

TEST(ErrorDynamics, DecayMatchesDominantRoot) {
    // e''' + 4e'' + 6e' + 2e = 0 from e(0) = 1, integrated independently.
    const std::vector<double> l{2.0, 6.0, 4.0};
    const double root = oracle::dominant_real_part(l);
    std::vector<double> ts, es;
    Eigen::Vector3d x(1.0, 0.0, 0.0);
    const double h = 1e-3;
    const auto rhs = [&](const Eigen::Vector3d& s) {
        return Eigen::Vector3d(s(1), s(2), -l[0] * s(0) - l[1] * s(1) - l[2] * s(2));
    };
    for (int i = 0; i <= 20000; ++i) {
        ts.push_back(i * h);
        es.push_back(x(0));
        const auto k1 = rhs(x), k2 = rhs(x + 0.5 * h * k1), k3 = rhs(x + 0.5 * h * k2), k4 = rhs(x + h * k3);
        x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    const double slope = oracle::log_slope(ts, es, 5.0, 20.0);
    EXPECT_NEAR(slope, root, 0.05 * std::abs(root));
}

}  // namespace
}  // namespace flatin::control
