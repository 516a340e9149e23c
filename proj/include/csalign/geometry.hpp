#pragma once

// Domains (R^d and the circle of length 2*pi), minimal-image displacement,
// directed distances and the auxiliary profiles chi / psi of the correctors.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "errors.hpp"

namespace csalign {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Domain {
    enum class Kind { Euclidean, Circle };

    Kind kind = Kind::Euclidean;
    std::size_t dim = 1;

    static Domain euclidean(std::size_t d) {
        if (d == 0) throw StructuralError("euclidean domain needs dim >= 1");
        return {Kind::Euclidean, d};
    }
    static Domain circle() { return {Kind::Circle, 1}; }

    bool is_circle() const noexcept { return kind == Kind::Circle; }
    bool operator==(const Domain&) const = default;
};

/// Representative of x in [0, 2*pi).
inline double wrap_circle(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0.0) y += two_pi;
    // fmod of a tiny negative number can round up to exactly 2*pi
    if (y >= two_pi) y = 0.0;
    return y;
}

/// Representative of dx in (-pi, pi]. The seam dx = pi maps to +pi, so
/// minimal_image(-d) == -minimal_image(d) everywhere except at |d| = pi.
inline double minimal_image(double dx) {
    double y = std::fmod(dx, two_pi);
    if (y > pi) y -= two_pi;
    else if (y <= -pi) y += two_pi;
    return y;
}

/// x_i - x_j, minimal image on the circle.
inline void displacement(const Domain& dom, std::span<const double> xi, std::span<const double> xj,
                         std::span<double> out) {
    if (xi.size() != dom.dim || xj.size() != dom.dim || out.size() != dom.dim)
        throw StructuralError("displacement: dimension mismatch");
    if (dom.is_circle()) {
        out[0] = minimal_image(xi[0] - xj[0]);
        return;
    }
    for (std::size_t k = 0; k < dom.dim; ++k) out[k] = xi[k] - xj[k];
}

/// |x_i - x_j| (geodesic on the circle).
inline double distance(const Domain& dom, std::span<const double> xi, std::span<const double> xj) {
    if (xi.size() != dom.dim || xj.size() != dom.dim)
        throw StructuralError("distance: dimension mismatch");
    if (dom.is_circle()) return std::abs(minimal_image(xi[0] - xj[0]));
    double s = 0.0;
    for (std::size_t k = 0; k < dom.dim; ++k) {
        const double d = xi[k] - xj[k];
        s += d * d;
    }
    return std::sqrt(s);
}

/// -x_ij . v_ij / |v_ij|; empty when v_ij = 0 (direction undefined, the
/// corrector summand vanishes there).
inline std::optional<double> directed_distance_euclidean(std::span<const double> x_ij,
                                                         std::span<const double> v_ij) {
    if (x_ij.size() != v_ij.size()) throw StructuralError("directed distance: dimension mismatch");
    double dot = 0.0, vv = 0.0;
    for (std::size_t k = 0; k < x_ij.size(); ++k) {
        dot += x_ij[k] * v_ij[k];
        vv += v_ij[k] * v_ij[k];
    }
    if (vv == 0.0) return std::nullopt;
    return -dot / std::sqrt(vv);
}

/// Length of the arc between x_i and x_j (both in [0, 2*pi)) that contracts
/// when sign(v_i - v_j) = sign: (-(x_i - x_j) * sign) mod 2*pi in [0, 2*pi).
inline double directed_distance_circle(double x_i, double x_j, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("directed_distance_circle: sign must be +-1");
    return wrap_circle(-(x_i - x_j) * static_cast<double>(sign));
}

enum class ProfileVariant { ChiTruncation, PsiEuclidean, PsiPeriodic };

struct AuxiliaryProfile {
    double r0 = 1.0;
    ProfileVariant variant = ProfileVariant::ChiTruncation;
};

/// Spatial truncation: 1 on [0, r0), linear to 0 on [r0, 2 r0], 0 beyond.
inline double chi(const AuxiliaryProfile& p, double r) {
    if (p.variant != ProfileVariant::ChiTruncation) throw UnsupportedQuery("chi needs a ChiTruncation profile");
    if (r < p.r0) return 1.0;
    if (r <= 2.0 * p.r0) return 2.0 - r / p.r0;
    return 0.0;
}

inline double psi(const AuxiliaryProfile& p, double x) {
    const double r0 = p.r0;
    switch (p.variant) {
        case ProfileVariant::PsiEuclidean:
            if (x < -r0) return 0.0;
            if (x <= r0) return x + r0;
            return 2.0 * r0;
        case ProfileVariant::PsiPeriodic: {
            if (!(r0 < pi)) throw DomainError("periodic psi needs r0 < pi");
            // reduce to [-r0, 2*pi - r0)
            const double y = wrap_circle(x + r0) - r0;
            if (y <= r0) return r0 - y;
            return r0 * (y - r0) / (pi - r0);
        }
        case ProfileVariant::ChiTruncation:
            break;
    }
    throw UnsupportedQuery("psi needs a Psi profile");
}

}  // namespace csalign
