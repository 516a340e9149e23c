#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"

namespace csalign {

/// Positions, velocities and positive weights of N agents, stored row-major
/// with stride `dim`. Uniform weights 1/N give the discrete particle system;
/// general weights discretize a Lagrangian mass distribution.
struct FlockState {
    double t = 0.0;
    std::size_t dim = 1;
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> m;

    FlockState() = default;
    FlockState(std::size_t n, std::size_t d, double t0 = 0.0)
        : t(t0), dim(d), x(n * d, 0.0), v(n * d, 0.0), m(n, 1.0 / static_cast<double>(n)) {}

    std::size_t size() const noexcept { return m.size(); }

    std::span<double> pos(std::size_t i) { return {x.data() + i * dim, dim}; }
    std::span<const double> pos(std::size_t i) const { return {x.data() + i * dim, dim}; }
    std::span<double> vel(std::size_t i) { return {v.data() + i * dim, dim}; }
    std::span<const double> vel(std::size_t i) const { return {v.data() + i * dim, dim}; }

    double total_mass() const {
        double s = 0.0;
        for (double w : m) s += w;
        return s;
    }

    bool operator==(const FlockState&) const = default;
};

inline void validate(const FlockState& s, const Domain& dom) {
    const std::size_t n = s.size();
    if (n == 0) throw StructuralError("flock must contain at least one agent");
    if (s.dim != dom.dim) throw StructuralError("state dimension does not match the domain");
    if (s.x.size() != n * s.dim || s.v.size() != n * s.dim)
        throw StructuralError("position/velocity arrays do not match N*dim");
    for (double w : s.m)
        if (!(w > 0.0) || !std::isfinite(w)) throw StructuralError("weights must be positive and finite");
    for (double c : s.x)
        if (!std::isfinite(c)) throw StructuralError("non-finite position");
    for (double c : s.v)
        if (!std::isfinite(c)) throw StructuralError("non-finite velocity");
    if (!std::isfinite(s.t)) throw StructuralError("non-finite time");
    if (dom.is_circle())
        for (double c : s.x)
            if (c < 0.0 || c >= two_pi) throw StructuralError("circle positions must lie in [0, 2*pi)");
}

/// Weighted mean velocity sum m_i v_i / sum m_i.
inline std::vector<double> momentum(const FlockState& s) {
    std::vector<double> p(s.dim, 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t k = 0; k < s.dim; ++k) p[k] += s.m[i] * s.v[i * s.dim + k];
        mass += s.m[i];
    }
    for (double& c : p) c /= mass;
    return p;
}

/// max_{i,j} |v_i - v_j|.
inline double velocity_diameter(const FlockState& s) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            double q = 0.0;
            for (std::size_t k = 0; k < s.dim; ++k) {
                const double d = s.v[i * s.dim + k] - s.v[j * s.dim + k];
                q += d * d;
            }
            best = std::max(best, q);
        }
    return std::sqrt(best);
}

/// max_{i,j} |x_i - x_j| (minimal image on the circle).
inline double flock_diameter(const FlockState& s, const Domain& dom) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            best = std::max(best, distance(dom, s.pos(i), s.pos(j)));
    return best;
}

struct ClosestPair {
    std::size_t i = 0, j = 0;
    double distance = std::numeric_limits<double>::infinity();
};

/// Closest pair of agents; distance is +inf for a single agent.
inline ClosestPair closest_pair(const FlockState& s, const Domain& dom) {
    ClosestPair best;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const double d = distance(dom, s.pos(i), s.pos(j));
            if (d < best.distance) best = {i, j, d};
        }
    return best;
}

/// Shifts every velocity by w (Galilean boost).
inline FlockState boosted(FlockState s, std::span<const double> w) {
    if (w.size() != s.dim) throw StructuralError("boost: dimension mismatch");
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = 0; k < s.dim; ++k) s.v[i * s.dim + k] += w[k];
    return s;
}

}  // namespace csalign
