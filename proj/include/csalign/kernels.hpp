#pragma once

// Communication kernels phi(r), their singularity class, fat-tail minorants
// and exact primitives.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace csalign {

enum class KernelKind { ClassicalCS, SingularPower, LocalMollified, Annular, ConstantNear0Smooth };

enum class SingularityClass { Smooth, IntegrableSingular, StrongSingular };

struct KernelSpec {
    KernelKind kind = KernelKind::ClassicalCS;
    double lambda = 1.0;      // lower amplitude
    double Lambda = 1.0;      // upper amplitude, >= lambda
    double beta = 0.0;        // tail exponent, or singularity exponent for SingularPower
    double r0 = 1.0;          // communication / degeneracy radius
    double moll_width = 0.0;  // ramp width for LocalMollified

    bool operator==(const KernelSpec&) const = default;

    static KernelSpec classical(double lambda, double beta) {
        return {KernelKind::ClassicalCS, lambda, lambda, beta, 1.0, 0.0};
    }
    static KernelSpec singular_power(double lambda, double beta, double r0 = 1.0) {
        return {KernelKind::SingularPower, lambda, lambda, beta, r0, 0.0};
    }
    /// Local kernel; a negative width selects the default ramp 0.1 * r0.
    static KernelSpec local(double lambda, double r0, double width = -1.0) {
        return {KernelKind::LocalMollified, lambda, lambda, 0.0, r0, width < 0.0 ? 0.1 * r0 : width};
    }
    static KernelSpec annular(double lambda, double r0, double beta) {
        return {KernelKind::Annular, lambda, lambda, beta, r0, 0.0};
    }
    static KernelSpec constant_near_zero(double lambda, double r0, double beta) {
        return {KernelKind::ConstantNear0Smooth, lambda, lambda, beta, r0, 0.0};
    }
};

inline std::string_view to_string(KernelKind k) {
    switch (k) {
        case KernelKind::ClassicalCS: return "classical";
        case KernelKind::SingularPower: return "singular_power";
        case KernelKind::LocalMollified: return "local_mollified";
        case KernelKind::Annular: return "annular";
        case KernelKind::ConstantNear0Smooth: return "constant_near0";
    }
    return "?";
}

inline KernelKind kernel_kind_from_string(std::string_view s) {
    for (auto k : {KernelKind::ClassicalCS, KernelKind::SingularPower, KernelKind::LocalMollified,
                   KernelKind::Annular, KernelKind::ConstantNear0Smooth})
        if (to_string(k) == s) return k;
    throw ConfigError("unknown kernel kind '" + std::string(s) + "'");
}

inline std::string_view to_string(SingularityClass c) {
    switch (c) {
        case SingularityClass::Smooth: return "smooth";
        case SingularityClass::IntegrableSingular: return "integrable_singular";
        case SingularityClass::StrongSingular: return "strong_singular";
    }
    return "?";
}

inline void validate(const KernelSpec& k) {
    auto bad = [](const std::string& what) { throw ConfigError("kernel: " + what); };
    if (!(k.lambda > 0.0) || !std::isfinite(k.lambda)) bad("lambda must be positive");
    if (!(k.Lambda >= k.lambda) || !std::isfinite(k.Lambda)) bad("Lambda must be >= lambda");
    if (!(k.beta >= 0.0) || !std::isfinite(k.beta)) bad("beta must be nonnegative");
    if (!(k.r0 > 0.0) || !std::isfinite(k.r0)) bad("r0 must be positive");
    if (!(k.moll_width >= 0.0) || k.moll_width > k.r0) bad("moll_width must lie in [0, r0]");
}

inline SingularityClass classify(const KernelSpec& k) {
    if (k.kind != KernelKind::SingularPower || k.beta == 0.0) return SingularityClass::Smooth;
    return k.beta >= 1.0 ? SingularityClass::StrongSingular : SingularityClass::IntegrableSingular;
}

inline bool is_singular(const KernelSpec& k) { return classify(k) != SingularityClass::Smooth; }

namespace detail {

// 1 - smoothstep(s): C^1 ramp from 1 down to 0 on [0, 1].
inline double ramp_down(double s) { return 1.0 - s * s * (3.0 - 2.0 * s); }
// Antiderivative of ramp_down vanishing at 0.
inline double ramp_down_primitive(double s) { return s - s * s * s + 0.5 * s * s * s * s; }

// int_0^u (1 + s^2)^(-beta/2) ds for u in [0, inf].
inline double algebraic_primitive(double u, double beta) {
    if (u == 0.0) return 0.0;
    const bool inf = std::isinf(u);
    if (beta == 0.0) return u;
    if (beta == 1.0) return inf ? std::numeric_limits<double>::infinity() : std::asinh(u);
    if (beta == 2.0) return inf ? 0.5 * M_PI : std::atan(u);
    if (beta == 3.0) return inf ? 1.0 : u / std::sqrt(1.0 + u * u);
    if (inf && beta <= 1.0) return std::numeric_limits<double>::infinity();
    auto f = [beta](double s) { return std::pow(1.0 + s * s, -0.5 * beta); };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, u, 15, 1e-12, &err);
}

// Antiderivative G with G(0) = 0, so that int_a^b phi = G(b) - G(a). Infinite
// arguments return +inf when the tail diverges.
inline double antiderivative(const KernelSpec& k, double r) {
    const double inf = std::numeric_limits<double>::infinity();
    switch (k.kind) {
        case KernelKind::ClassicalCS:
            return k.lambda * algebraic_primitive(r, k.beta);
        case KernelKind::ConstantNear0Smooth:
            if (r <= k.r0) return k.lambda * r;
            return k.lambda * (k.r0 + algebraic_primitive(r - k.r0, k.beta));
        case KernelKind::LocalMollified: {
            const double a = k.r0 - k.moll_width;
            if (r <= a) return k.lambda * r;
            if (r >= k.r0) return k.lambda * (a + 0.5 * k.moll_width);
            return k.lambda * (a + k.moll_width * ramp_down_primitive((r - a) / k.moll_width));
        }
        case KernelKind::Annular: {
            if (r <= k.r0) return 0.0;
            const double y = 1.0 + r - k.r0;
            if (std::isinf(y)) return k.beta <= 1.0 ? inf : k.lambda / (k.beta - 1.0);
            if (k.beta == 1.0) return k.lambda * std::log(y);
            return k.lambda * (std::pow(y, 1.0 - k.beta) - 1.0) / (1.0 - k.beta);
        }
        case KernelKind::SingularPower:
            break;
    }
    throw UnsupportedQuery("antiderivative not anchored at 0 for singular power kernels");
}

}  // namespace detail

/// phi(r). Throws DomainError for r < 0, and for r == 0 on a kernel unbounded at 0.
inline double eval(const KernelSpec& k, double r) {
    if (!(r >= 0.0)) throw DomainError("kernel evaluated at negative separation");
    switch (k.kind) {
        case KernelKind::ClassicalCS:
            return k.lambda * std::pow(1.0 + r * r, -0.5 * k.beta);
        case KernelKind::SingularPower:
            if (r == 0.0) {
                if (k.beta > 0.0) throw DomainError("singular evaluation at zero separation");
                return k.lambda;
            }
            if (k.beta == 1.0) return k.lambda / r;
            if (k.beta == 2.0) return k.lambda / (r * r);
            return k.lambda * std::pow(r, -k.beta);
        case KernelKind::LocalMollified: {
            if (r >= k.r0) return 0.0;
            const double a = k.r0 - k.moll_width;
            if (r <= a) return k.lambda;
            return k.lambda * detail::ramp_down((r - a) / k.moll_width);
        }
        case KernelKind::Annular:
            if (r < k.r0) return 0.0;
            return k.lambda * std::pow(1.0 + r - k.r0, -k.beta);
        case KernelKind::ConstantNear0Smooth:
            if (r <= k.r0) return k.lambda;
            {
                const double u = r - k.r0;
                return k.lambda * std::pow(1.0 + u * u, -0.5 * k.beta);
            }
    }
    return 0.0;
}

/// Whether the kernel dominates a non-increasing, non-integrable tail.
inline bool has_fat_tail(const KernelSpec& k) {
    switch (k.kind) {
        case KernelKind::ClassicalCS:
        case KernelKind::Annular:
        case KernelKind::ConstantNear0Smooth:
        case KernelKind::SingularPower:
            return k.beta <= 1.0;
        case KernelKind::LocalMollified:
            return false;
    }
    return false;
}

/// Bounded, non-increasing minorant Phi(r) <= phi(r) for r > r0 with divergent
/// integral. Extended as the constant Phi(r0) to the left of r0.
inline double tail_minorant(const KernelSpec& k, double r) {
    if (!has_fat_tail(k)) throw UnsupportedQuery("kernel has no fat tail");
    if (!(r >= 0.0)) throw DomainError("tail minorant at negative separation");
    switch (k.kind) {
        case KernelKind::ClassicalCS:
        case KernelKind::ConstantNear0Smooth:
            return eval(k, r);
        case KernelKind::Annular:
        case KernelKind::SingularPower:
            return eval(k, std::max(r, k.r0));
        case KernelKind::LocalMollified:
            break;
    }
    throw UnsupportedQuery("kernel has no fat tail");
}

/// Result of an improper integral: either a finite value or an explicit divergence marker.
class IntegralValue {
public:
    static IntegralValue finite(double v) { return IntegralValue(false, v); }
    static IntegralValue divergent() { return IntegralValue(true, 0.0); }

    bool diverges() const noexcept { return diverges_; }
    double value() const {
        if (diverges_) throw DomainError("integral diverges");
        return value_;
    }

private:
    IntegralValue(bool d, double v) : diverges_(d), value_(v) {}
    bool diverges_;
    double value_;
};

/// int_{r1}^{r2} phi(r) dr. r1 == 0 asks for the limit at the origin and
/// r2 == +inf for the tail integral; either may diverge. The result is signed
/// (negative) when r1 > r2.
inline IntegralValue primitive_integral(const KernelSpec& k, double r1, double r2) {
    if (!(r1 >= 0.0) || !(r2 >= 0.0) || std::isinf(r1))
        throw DomainError("primitive_integral needs 0 <= r1 < inf and r2 >= 0");
    if (r1 > r2) {
        auto v = primitive_integral(k, r2, r1);
        return v.diverges() ? v : IntegralValue::finite(-v.value());
    }
    if (r1 == r2) return IntegralValue::finite(0.0);
    if (std::isinf(r2) && !std::isinf(r1) && has_fat_tail(k)) return IntegralValue::divergent();

    if (k.kind == KernelKind::SingularPower) {
        const double b = k.beta;
        if (r1 == 0.0 && b >= 1.0) return IntegralValue::divergent();
        if (std::isinf(r2)) return IntegralValue::finite(k.lambda * std::pow(r1, 1.0 - b) / (b - 1.0));
        if (b == 1.0) return IntegralValue::finite(k.lambda * std::log(r2 / r1));
        const double lo = r1 == 0.0 ? 0.0 : std::pow(r1, 1.0 - b);
        return IntegralValue::finite(k.lambda * (std::pow(r2, 1.0 - b) - lo) / (1.0 - b));
    }
    const double g2 = detail::antiderivative(k, r2);
    if (std::isinf(g2)) return IntegralValue::divergent();
    return IntegralValue::finite(g2 - detail::antiderivative(k, r1));
}

}  // namespace csalign
