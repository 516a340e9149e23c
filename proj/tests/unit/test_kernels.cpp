#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <csalign/kernels.hpp>

using namespace csalign;

namespace {

// composite Simpson on [a, b] with n (even) panels; endpoints are one-sided
// limits so a jump of f at a or b does not leak into the piece
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(std::nextafter(a, b)) + f(std::nextafter(b, a));
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

std::vector<KernelSpec> zoo() {
    return {KernelSpec::classical(1.0, 0.5),      KernelSpec::classical(2.0, 1.7),
            KernelSpec::singular_power(1.0, 0.5), KernelSpec::singular_power(1.5, 2.5),
            KernelSpec::local(2.0, 1.0, 0.2),     KernelSpec::local(1.0, 0.3),
            KernelSpec::annular(1.0, 1.0, 0.5),   KernelSpec::annular(1.0, 0.5, 1.0),
            KernelSpec::annular(1.0, 0.5, 2.5),   KernelSpec::constant_near_zero(1.0, 0.5, 1.3)};
}

}  // namespace

TEST(Kernels, EvalExamples) {
    EXPECT_DOUBLE_EQ(eval(KernelSpec::singular_power(1.0, 1.0), 0.25), 4.0);
    EXPECT_EQ(eval(KernelSpec::local(2.0, 1.0, 0.2), 1.5), 0.0);
    EXPECT_EQ(eval(KernelSpec::annular(1.0, 1.0, 0.5), 0.5), 0.0);
    EXPECT_NEAR(eval(KernelSpec::classical(1.0, 1.0), std::sqrt(3.0)), 0.5, 1e-15);
    EXPECT_EQ(eval(KernelSpec::local(2.0, 1.0, 0.2), 0.8), 2.0);
    EXPECT_NEAR(eval(KernelSpec::local(2.0, 1.0, 0.2), 0.9), 1.0, 1e-15);
    EXPECT_EQ(eval(KernelSpec::constant_near_zero(3.0, 0.5, 1.0), 0.5), 3.0);
}

TEST(Kernels, EvalErrors) {
    EXPECT_THROW(eval(KernelSpec::singular_power(1.0, 1.0), 0.0), DomainError);
    EXPECT_THROW(eval(KernelSpec::classical(1.0, 1.0), -1.0), DomainError);
    EXPECT_NO_THROW(eval(KernelSpec::classical(1.0, 1.0), 0.0));
}

TEST(Kernels, NonnegativeAndBoundedOnRandomDraws) {
    std::mt19937_64 eng(42);
    std::uniform_real_distribution<double> u(1e-6, 50.0);
    for (const auto& k : zoo())
        for (int q = 0; q < 10000; ++q) {
            const double r = u(eng);
            const double p = eval(k, r);
            ASSERT_GE(p, 0.0);
            if (!is_singular(k)) {
                ASSERT_LE(p, k.Lambda);
            }
        }
}

TEST(Kernels, LocalRampIsMonotoneAndContinuous) {
    const auto k = KernelSpec::local(1.0, 1.0, 0.25);
    double prev = eval(k, 0.0);
    for (int q = 1; q <= 2000; ++q) {
        const double r = 1.2 * q / 2000.0;
        const double p = eval(k, r);
        ASSERT_LE(p, prev + 1e-15);
        ASSERT_LT(prev - p, 0.01);
        prev = p;
    }
}

TEST(Kernels, Classify) {
    EXPECT_EQ(classify(KernelSpec::singular_power(1.0, 1.0)), SingularityClass::StrongSingular);
    EXPECT_EQ(classify(KernelSpec::singular_power(1.0, 0.5)), SingularityClass::IntegrableSingular);
    EXPECT_EQ(classify(KernelSpec::local(1.0, 1.0)), SingularityClass::Smooth);
    EXPECT_EQ(classify(KernelSpec::classical(1.0, 3.0)), SingularityClass::Smooth);
    EXPECT_EQ(classify(KernelSpec::annular(1.0, 1.0, 2.0)), SingularityClass::Smooth);
}

TEST(Kernels, TailMinorantExamples) {
    const auto c = KernelSpec::classical(1.0, 1.0);
    EXPECT_NEAR(tail_minorant(c, 1.0), 1.0 / std::sqrt(2.0), 1e-15);
    const auto a = KernelSpec::annular(1.0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(tail_minorant(a, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(tail_minorant(a, 0.5), tail_minorant(a, 1.0));
    EXPECT_THROW(tail_minorant(KernelSpec::local(1.0, 1.0), 1.0), UnsupportedQuery);
    EXPECT_THROW(tail_minorant(KernelSpec::classical(1.0, 2.0), 1.0), UnsupportedQuery);
}

TEST(Kernels, TailMinorantSandwich) {
    for (const auto& k : zoo()) {
        if (!has_fat_tail(k)) continue;
        double prev = tail_minorant(k, 0.0);
        for (int q = 1; q <= 4000; ++q) {
            const double r = 0.01 * q;
            const double m = tail_minorant(k, r);
            ASSERT_LE(m, prev);
            if (r > k.r0) {
                ASSERT_LE(m, eval(k, r) * (1.0 + 1e-15));
            }
            prev = m;
        }
        EXPECT_TRUE(primitive_integral(k, 2.0 * k.r0, INFINITY).diverges());
    }
}

TEST(Kernels, PrimitiveIntegralExamples) {
    EXPECT_NEAR(primitive_integral(KernelSpec::singular_power(1.0, 1.0), 0.1, 1.0).value(), std::log(10.0), 1e-14);
    EXPECT_NEAR(primitive_integral(KernelSpec::singular_power(1.0, 2.0), 0.5, 1.0).value(), 1.0, 1e-14);
    EXPECT_NEAR(primitive_integral(KernelSpec::local(1.0, 1.0, 0.0), 0.2, 2.0).value(), 0.8, 1e-14);
    EXPECT_NEAR(primitive_integral(KernelSpec::singular_power(1.0, 2.0), 0.1, 1.0).value(), 9.0, 1e-12);
}

TEST(Kernels, PrimitiveIntegralLimits) {
    EXPECT_TRUE(primitive_integral(KernelSpec::singular_power(1.0, 1.0), 0.0, 1.0).diverges());
    EXPECT_TRUE(primitive_integral(KernelSpec::singular_power(1.0, 1.5), 0.0, 1.0).diverges());
    EXPECT_NEAR(primitive_integral(KernelSpec::singular_power(1.0, 0.5), 0.0, 1.0).value(), 2.0, 1e-14);
    EXPECT_NEAR(primitive_integral(KernelSpec::singular_power(1.0, 3.0), 1.0, INFINITY).value(), 0.5, 1e-14);
    EXPECT_NEAR(primitive_integral(KernelSpec::classical(1.0, 2.0), 0.0, INFINITY).value(), M_PI / 2.0, 1e-14);
    EXPECT_TRUE(primitive_integral(KernelSpec::classical(1.0, 1.0), 0.0, INFINITY).diverges());
    EXPECT_NEAR(primitive_integral(KernelSpec::singular_power(1.0, 2.0), 1.0, 0.5).value(), -1.0, 1e-14);
    EXPECT_THROW(primitive_integral(KernelSpec::classical(1.0, 1.0), -0.1, 1.0), DomainError);
    EXPECT_THROW(primitive_integral(KernelSpec::singular_power(1.0, 1.0), 0.0, 1.0).value(), DomainError);
}

TEST(Kernels, PrimitiveIntegralMatchesSimpson) {
    const std::pair<double, double> ranges[] = {{0.05, 0.4}, {0.3, 1.7}, {0.9, 6.0}, {2.0, 30.0}};
    for (const auto& k : zoo())
        for (auto [a, b] : ranges) {
            // split at the kernel's kinks so the oracle sees smooth pieces
            std::vector<double> cuts = {a, b};
            for (double c : {k.r0, k.r0 - k.moll_width})
                if (c > a && c < b) cuts.push_back(c);
            std::sort(cuts.begin(), cuts.end());
            double ref = 0.0;
            for (std::size_t q = 0; q + 1 < cuts.size(); ++q)
                ref += simpson([&](double r) { return eval(k, r); }, cuts[q], cuts[q + 1], 20000);
            const double got = primitive_integral(k, a, b).value();
            EXPECT_NEAR(got, ref, 1e-8 * (1.0 + std::abs(ref))) << to_string(k.kind) << " beta " << k.beta << " ["
                                                                << a << ", " << b << "]";
        }
}

TEST(Kernels, Validation) {
    auto k = KernelSpec::classical(1.0, 1.0);
    k.Lambda = 0.5;
    EXPECT_THROW(validate(k), ConfigError);
    EXPECT_THROW(validate(KernelSpec::local(1.0, 1.0, 2.0)), ConfigError);
    EXPECT_THROW(validate(KernelSpec::singular_power(-1.0, 1.0)), ConfigError);
    EXPECT_EQ(kernel_kind_from_string("annular"), KernelKind::Annular);
    EXPECT_THROW(kernel_kind_from_string("gaussian"), ConfigError);
}
