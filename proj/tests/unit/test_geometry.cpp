#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <csalign/geometry.hpp>
#include <csalign/state.hpp>

using namespace csalign;

TEST(Geometry, DisplacementExamples) {
    std::vector<double> out(2);
    displacement(Domain::euclidean(2), std::vector<double>{1, 2}, std::vector<double>{0, 0}, out);
    EXPECT_EQ(out, (std::vector<double>{1, 2}));
    std::vector<double> o1(1);
    displacement(Domain::circle(), std::vector<double>{0.1}, std::vector<double>{6.0}, o1);
    EXPECT_NEAR(o1[0], 0.1 - 6.0 + two_pi, 1e-15);
    displacement(Domain::circle(), std::vector<double>{3.0}, std::vector<double>{3.0}, o1);
    EXPECT_EQ(o1[0], 0.0);
    EXPECT_THROW(displacement(Domain::euclidean(2), std::vector<double>{1}, std::vector<double>{0, 0}, out),
                 StructuralError);
}

TEST(Geometry, MinimalImageRangeAndAntisymmetry) {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> u(-40.0, 40.0);
    for (int q = 0; q < 10000; ++q) {
        const double d = u(eng);
        const double m = minimal_image(d);
        ASSERT_GT(m, -pi);
        ASSERT_LE(m, pi);
        ASSERT_NEAR(std::remainder(d - m, two_pi), 0.0, 1e-12);
        if (std::abs(std::abs(m) - pi) > 1e-9) {
            ASSERT_EQ(minimal_image(-d), -m);
        }
    }
    EXPECT_EQ(minimal_image(pi), pi);
    EXPECT_EQ(minimal_image(-pi), pi);
}

TEST(Geometry, WrapIsPeriodic) {
    for (double x : {-7.0, -1e-18, 0.0, 3.0, two_pi, 13.0}) {
        const double w = wrap_circle(x);
        EXPECT_GE(w, 0.0);
        EXPECT_LT(w, two_pi);
        EXPECT_NEAR(wrap_circle(x + two_pi), w, 1e-12);
    }
}

TEST(Geometry, CircleDistanceIsOneLipschitz) {
    const Domain c = Domain::circle();
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> u(0.0, two_pi);
    const double h = 1e-6;
    for (int q = 0; q < 2000; ++q) {
        const double a = u(eng), b = u(eng);
        const double d0 = distance(c, std::vector<double>{a}, std::vector<double>{b});
        const double d1 = distance(c, std::vector<double>{wrap_circle(a + h)}, std::vector<double>{b});
        ASSERT_LE(std::abs(d1 - d0), h * (1.0 + 1e-6));
        ASSERT_LE(d0, pi);
    }
}

TEST(Geometry, DirectedDistanceEuclidean) {
    EXPECT_DOUBLE_EQ(*directed_distance_euclidean(std::vector<double>{3, 4}, std::vector<double>{0, 2}), -4.0);
    EXPECT_DOUBLE_EQ(*directed_distance_euclidean(std::vector<double>{1, 0}, std::vector<double>{-1, 0}), 1.0);
    EXPECT_EQ(*directed_distance_euclidean(std::vector<double>{0, 0}, std::vector<double>{5, 0}), 0.0);
    EXPECT_FALSE(directed_distance_euclidean(std::vector<double>{1, 0}, std::vector<double>{0, 0}));
}

TEST(Geometry, DirectedDistanceCircle) {
    EXPECT_NEAR(directed_distance_circle(0.3, 6.0, 1), 5.7, 1e-15);
    EXPECT_NEAR(directed_distance_circle(6.0, 0.3, 1), two_pi - 5.7, 1e-15);
    EXPECT_EQ(directed_distance_circle(2.0, 2.0, 1), 0.0);
    EXPECT_EQ(directed_distance_circle(2.0, 2.0, -1), 0.0);
    EXPECT_THROW(directed_distance_circle(0.0, 1.0, 0), DomainError);
}

TEST(Geometry, DirectedArcsPartitionTheCircle) {
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<double> u(0.0, two_pi);
    for (int q = 0; q < 1000; ++q) {
        const double a = u(eng), b = u(eng);
        if (a == b) continue;
        ASSERT_NEAR(directed_distance_circle(a, b, 1) + directed_distance_circle(a, b, -1), two_pi, 1e-12);
        ASSERT_NEAR(directed_distance_circle(a, b, 1), directed_distance_circle(b, a, -1), 1e-12);
    }
}

TEST(Geometry, ChiProfile) {
    const AuxiliaryProfile p{2.0, ProfileVariant::ChiTruncation};
    EXPECT_EQ(chi(p, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(chi(p, 3.0), 0.5);
    EXPECT_EQ(chi(p, 6.0), 0.0);
    EXPECT_THROW(chi({1.0, ProfileVariant::PsiEuclidean}, 0.5), UnsupportedQuery);
}

TEST(Geometry, PsiProfiles) {
    const double r0 = 0.7;
    const AuxiliaryProfile e{r0, ProfileVariant::PsiEuclidean};
    EXPECT_DOUBLE_EQ(psi(e, 0.0), r0);
    EXPECT_EQ(psi(e, -2.0), 0.0);
    EXPECT_DOUBLE_EQ(psi(e, 5.0), 2.0 * r0);
    const AuxiliaryProfile c{r0, ProfileVariant::PsiPeriodic};
    EXPECT_NEAR(psi(c, r0), 0.0, 1e-15);
    EXPECT_NEAR(psi(c, pi), r0, 1e-14);
    EXPECT_NEAR(psi(c, two_pi - r0), 2.0 * r0, 1e-14);
    EXPECT_NEAR(psi(c, -r0), 2.0 * r0, 1e-14);
    EXPECT_NEAR(psi(c, 0.3 + two_pi), psi(c, 0.3), 1e-13);
    EXPECT_THROW(psi({4.0, ProfileVariant::PsiPeriodic}, 0.0), DomainError);
}

TEST(Geometry, StateSummaries) {
    FlockState s(2, 2);
    s.v = {1, 0, -1, 0};
    EXPECT_EQ(momentum(s), (std::vector<double>{0, 0}));
    EXPECT_DOUBLE_EQ(velocity_diameter(s), 2.0);
    FlockState one(1, 1);
    one.v = {3.0};
    EXPECT_EQ(velocity_diameter(one), 0.0);
    EXPECT_EQ(flock_diameter(one, Domain::euclidean(1)), 0.0);
    FlockState t(3, 1);
    t.v = {0, 1, 2};
    EXPECT_NEAR(momentum(t)[0], 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(velocity_diameter(t), 2.0);
}

TEST(Geometry, StateValidation) {
    FlockState s(2, 1);
    s.x = {0.0, 7.0};
    EXPECT_THROW(validate(s, Domain::circle()), StructuralError);
    EXPECT_NO_THROW(validate(s, Domain::euclidean(1)));
    s.m[0] = 0.0;
    EXPECT_THROW(validate(s, Domain::euclidean(1)), StructuralError);
    EXPECT_THROW(validate(FlockState(2, 2), Domain::euclidean(1)), StructuralError);
    EXPECT_THROW(Domain::euclidean(0), StructuralError);
}
