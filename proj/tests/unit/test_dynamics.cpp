#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <csalign/csalign.hpp>

using namespace csalign;

namespace {

const KernelSpec unit_kernel = KernelSpec::constant_near_zero(1.0, 10.0, 1.0);

// unit weights, phi = 1: half-difference obeys x' = v, v' = -2v
FlockState linear_pair(double x0, double v0) {
    FlockState s(2, 1);
    s.x = {x0, -x0};
    s.v = {v0, -v0};
    s.m = {1.0, 1.0};
    return s;
}

double linear_pair_x(double x0, double v0, double t) { return x0 + 0.5 * v0 * (1.0 - std::exp(-2.0 * t)); }

FlockState advance(FlockState s, const KernelSpec& k, const Domain& dom, const StepperConfig& cfg, double T) {
    while (s.t < T) {
        const double cap = T - s.t;
        StepResult r = step(s, k, dom, cfg, cap);
        const bool landed = r.dt >= cap;
        s = std::move(r.state);
        if (landed) s.t = T;
    }
    return s;
}

FlockState random_flock(std::size_t n, std::size_t d, std::uint64_t seed) {
    InitialDataSpec spec;
    spec.kind = "uniform";
    spec.seed = seed;
    spec.params = {{"half_width", 2.0}, {"sigma", 1.0}};
    return generate(spec, n, Domain::euclidean(d), Mode::Discrete);
}

}  // namespace

TEST(Dynamics, RhsTwoAgentExample) {
    FlockState s(2, 1);
    s.x = {0.1, -0.1};
    s.v = {0.7, -0.7};
    const auto a = rhs(s, unit_kernel, Domain::euclidean(1));
    EXPECT_DOUBLE_EQ(a[0], -0.7);
    EXPECT_DOUBLE_EQ(a[1], 0.7);
}

TEST(Dynamics, RhsSingularPairConservationLaw) {
    // v' = -v / (2x)^beta for the half-difference of a symmetric pair
    const double beta = 1.5, x = 0.4, v = -0.3;
    FlockState s(2, 1);
    s.x = {x, -x};
    s.v = {v, -v};
    s.m = {1.0, 1.0};
    const auto a = rhs(s, KernelSpec::singular_power(1.0, beta), Domain::euclidean(1));
    EXPECT_NEAR(0.5 * (a[0] - a[1]), -2.0 * v / std::pow(2.0 * x, beta), 1e-14);
}

TEST(Dynamics, RhsAlignedFlockIsAtRest) {
    FlockState s = random_flock(10, 2, 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s.v[2 * i] = 0.3;
        s.v[2 * i + 1] = -1.1;
    }
    for (double c : rhs(s, KernelSpec::classical(1.0, 0.5), Domain::euclidean(2))) EXPECT_EQ(c, 0.0);
}

TEST(Dynamics, RhsCollisionError) {
    FlockState s(2, 1);
    s.x = {0.5, 0.5};
    EXPECT_THROW(rhs(s, KernelSpec::singular_power(1.0, 1.0), Domain::euclidean(1)), CollisionError);
    try {
        rhs(s, KernelSpec::singular_power(1.0, 1.0), Domain::euclidean(1));
    } catch (const CollisionError& e) {
        EXPECT_EQ(e.first(), 0u);
        EXPECT_EQ(e.second(), 1u);
    }
}

TEST(Dynamics, RhsWeightedMomentumBalance) {
    FlockState s = random_flock(12, 3, 4);
    for (std::size_t i = 0; i < s.size(); ++i) s.m[i] = 0.5 + 0.1 * static_cast<double>(i);
    const auto a = rhs(s, KernelSpec::classical(1.0, 0.7), Domain::euclidean(3));
    for (std::size_t c = 0; c < 3; ++c) {
        double p = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) p += s.m[i] * a[3 * i + c];
        EXPECT_NEAR(p, 0.0, 1e-13);
    }
}

TEST(Dynamics, ClosedFormTwoAgentCrossing) {
    const double x0 = 0.5, v0 = -2.0;
    StepperConfig cfg;
    cfg.dt_max = 1e-2;
    const Domain dom = Domain::euclidean(1);
    FlockState s = linear_pair(x0, v0);
    bool crossed = false;
    for (double T = 0.1; T <= 3.0 + 1e-12; T += 0.1) {
        s = advance(s, unit_kernel, dom, cfg, T);
        const double x = 0.5 * (s.x[0] - s.x[1]);
        EXPECT_NEAR(x, linear_pair_x(x0, v0, T), 1e-6);
        crossed = crossed || x < 0.0;
    }
    EXPECT_TRUE(crossed);
}

TEST(Dynamics, FourthOrderConvergence) {
    const double x0 = 0.5, v0 = -2.0, T = 1.0;
    std::vector<double> err;
    for (double dt : {0.1, 0.05, 0.025}) {
        StepperConfig cfg;
        cfg.dt_max = dt;
        cfg.safety = 0.9;
        const FlockState s = advance(linear_pair(x0, v0), unit_kernel, Domain::euclidean(1), cfg, T);
        err.push_back(std::abs(0.5 * (s.x[0] - s.x[1]) - linear_pair_x(x0, v0, T)));
    }
    EXPECT_GE(std::log2(err[0] / err[1]), 3.7);
    EXPECT_GE(std::log2(err[1] / err[2]), 3.7);
}

TEST(Dynamics, MomentumAndMaximumPrinciple) {
    const Domain dom = Domain::euclidean(1);
    InitialDataSpec spec;
    spec.kind = "uniform";
    spec.seed = 8;
    FlockState s = generate(spec, 16, dom, Mode::Discrete);
    const double vmin = *std::min_element(s.v.begin(), s.v.end());
    const double vmax = *std::max_element(s.v.begin(), s.v.end());
    const double p0 = momentum(s)[0];
    StepperConfig cfg;
    cfg.dt_max = 0.05;
    const auto k = KernelSpec::classical(1.0, 0.5);
    for (int q = 0; q < 200; ++q) {
        s = step(s, k, dom, cfg).state;
        for (double v : s.v) {
            ASSERT_GE(v, vmin - 1e-12);
            ASSERT_LE(v, vmax + 1e-12);
        }
        ASSERT_NEAR(momentum(s)[0], p0, 1e-13);
    }
}

TEST(Dynamics, GalileanInvariance) {
    const Domain dom = Domain::euclidean(2);
    const auto k = KernelSpec::classical(1.0, 0.5);
    StepperConfig cfg;
    cfg.dt_max = 0.05;
    const FlockState s0 = random_flock(8, 2, 2);
    const std::vector<double> w = {1.5, -0.5};
    const FlockState a = advance(s0, k, dom, cfg, 5.0);
    const FlockState b = advance(boosted(s0, w), k, dom, cfg, 5.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t c = 0; c < 2; ++c) {
            EXPECT_NEAR(b.v[2 * i + c], a.v[2 * i + c] + w[c], 1e-12);
            EXPECT_NEAR(b.x[2 * i + c], a.x[2 * i + c] + 5.0 * w[c], 1e-11);
        }
}

TEST(Dynamics, SingleAgentMovesAffinely) {
    FlockState s(1, 2);
    s.x = {1.0, -1.0};
    s.v = {0.25, 2.0};
    const auto tr = integrate(s, KernelSpec::classical(1.0, 1.0), Domain::euclidean(2), StepperConfig{},
                              3.0, ObserverSchedule::linear(6));
    ASSERT_TRUE(tr.ok());
    EXPECT_EQ(tr.final_state.v, s.v);
    EXPECT_NEAR(tr.final_state.x[0], 1.75, 1e-13);
    EXPECT_NEAR(tr.final_state.x[1], 5.0, 1e-13);
    EXPECT_EQ(tr.final_state.t, 3.0);
}

TEST(Dynamics, CircleWrapsPositions) {
    FlockState s(1, 1);
    s.x = {6.0};
    s.v = {1.0};
    const auto tr = integrate(s, KernelSpec::local(1.0, 0.5), Domain::circle(), StepperConfig{}, 2.0,
                              ObserverSchedule::linear(4));
    EXPECT_NEAR(tr.final_state.x[0], 8.0 - two_pi, 1e-12);
}

TEST(Dynamics, HorizonAtCurrentTimeIsEmpty) {
    FlockState s = random_flock(4, 2, 3);
    s.t = 2.0;
    const auto tr = integrate(s, KernelSpec::classical(1.0, 1.0), Domain::euclidean(2), StepperConfig{}, 2.0,
                              ObserverSchedule::linear(10));
    EXPECT_TRUE(tr.records.empty());
    EXPECT_EQ(tr.final_state, s);
}

TEST(Dynamics, StepRespectsCapAndDtMax) {
    FlockState s = random_flock(4, 2, 6);
    StepperConfig cfg;
    cfg.dt_max = 0.1;
    const auto k = KernelSpec::classical(1.0, 1.0);
    EXPECT_LE(step(s, k, Domain::euclidean(2), cfg).dt, 0.1);
    EXPECT_EQ(step(s, k, Domain::euclidean(2), cfg, 0.03).dt, 0.03);
}

TEST(Dynamics, StiffnessErrorBelowGuard) {
    FlockState s(2, 1);
    s.x = {0.2, -0.2};
    s.v = {-1.0, 1.0};
    StepperConfig cfg;
    cfg.d_guard = 0.5;
    EXPECT_THROW(step(s, KernelSpec::singular_power(1.0, 1.5), Domain::euclidean(1), cfg), StiffnessError);
    try {
        step(s, KernelSpec::singular_power(1.0, 1.5), Domain::euclidean(1), cfg);
    } catch (const StiffnessError& e) {
        EXPECT_LT(e.dt(), min_step);
        EXPECT_NEAR(e.separation(), 0.4, 1e-15);
    }
}

TEST(Dynamics, WeakSingularPairReachesGuard) {
    const auto tr = run(scenario("two-agent-weak-singular-collision"));
    ASSERT_TRUE(tr.failure.has_value());
    EXPECT_EQ(tr.failure->kind, "stiffness");
    EXPECT_LT(tr.failure->t, 10.0);
    EXPECT_LE(tr.failure->separation, 1e-8);
}

TEST(Dynamics, ObserverSchedules) {
    const auto lin = ObserverSchedule::linear(4).times(0.0, 1.0);
    ASSERT_EQ(lin.size(), 4u);
    EXPECT_DOUBLE_EQ(lin[0], 0.25);
    EXPECT_EQ(lin.back(), 1.0);
    const auto geo = ObserverSchedule::geometric(5, 0.01).times(0.0, 100.0);
    ASSERT_EQ(geo.size(), 5u);
    EXPECT_DOUBLE_EQ(geo[0], 0.01);
    EXPECT_NEAR(geo[2], 1.0, 1e-12);
    EXPECT_EQ(geo.back(), 100.0);
}

TEST(Dynamics, IntegrateRecordsLandOnTargets) {
    const auto c = scenario("euclid-classical-ensemble");
    const auto tr = integrate(initial_state(c), c.kernel, c.domain, c.stepper, 2.0, ObserverSchedule::linear(8));
    ASSERT_EQ(tr.records.size(), 9u);
    EXPECT_EQ(tr.records.front().t, 0.0);
    for (std::size_t q = 1; q < tr.records.size(); ++q) EXPECT_DOUBLE_EQ(tr.records[q].t, 0.25 * q);
    EXPECT_EQ(tr.records.back().t, 2.0);
}
