#pragma once

// Initial-data generators. Every generator is a deterministic function of
// (spec, N, domain); randomness comes only from Rng(spec.seed).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "state.hpp"

namespace csalign {

enum class Mode { Discrete, Lagrangian };

inline std::string_view to_string(Mode m) { return m == Mode::Discrete ? "discrete" : "lagrangian"; }

inline Mode mode_from_string(std::string_view s) {
    if (s == "discrete") return Mode::Discrete;
    if (s == "lagrangian") return Mode::Lagrangian;
    throw ConfigError("unknown mode: " + std::string(s));
}

/// Generator kind plus named numeric parameters. Unlisted parameters take the
/// defaults documented in generate().
struct InitialDataSpec {
    std::string kind = "uniform";
    std::uint64_t seed = 1;
    std::map<std::string, double> params;
    std::vector<std::vector<double>> table;  // kind "table": rows x..., v..., m

    double get(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    bool operator==(const InitialDataSpec&) const = default;
};

namespace detail {

inline double gen_position_uniform(Rng& g, const Domain& dom, double half_width) {
    return dom.is_circle() ? g.uniform(0.0, two_pi) : g.uniform(-half_width, half_width);
}

inline void normalize_weights(FlockState& s, double mass) {
    const double total = s.total_mass();
    for (double& w : s.m) w *= mass / total;
}

}  // namespace detail

inline const std::vector<std::string>& generator_kinds() {
    static const std::vector<std::string> kinds = {"uniform",        "jittered",   "two_cluster", "two_agent",
                                                   "parallel_lines", "vacuum_gap", "table"};
    return kinds;
}

/// Builds the initial state. Parameters (defaults):
///   uniform        half_width (1), sigma (1), mean_v (0)
///   jittered       jitter (0.3) as a fraction of the lattice spacing, sigma, mean_v; circle or R^1 lattice
///   two_cluster    separation (2), spread (0.1), u (1), sigma (0)
///   two_agent      x0 (1), v0 (-1); agents at c +- x0 e_1 with velocities +- v0 e_1 (c = pi on the circle)
///   parallel_lines separation (1), spacing (0.5), u (1)
///   vacuum_gap     fill (0.5) fraction of the circle that is occupied, sigma, mean_v
///   table          explicit rows; N and dim taken from the table
/// Weights: uniform 1/N in discrete mode; in Lagrangian mode param "weights"
/// (0 uniform, 1 random), "weight_spread" (0.5), "mass" (1).
inline FlockState generate(const InitialDataSpec& spec, std::size_t n, const Domain& dom, Mode mode) {
    const std::size_t d = dom.dim;
    Rng g(spec.seed);
    FlockState s(n, d);
    const std::string& kind = spec.kind;

    if (kind == "table") {
        if (spec.table.empty()) throw ConfigError("table generator needs rows");
        s = FlockState(spec.table.size(), d);
        for (std::size_t i = 0; i < spec.table.size(); ++i) {
            const auto& row = spec.table[i];
            if (row.size() != 2 * d + 1) throw ConfigError("table row must hold 2*dim + 1 numbers");
            for (std::size_t c = 0; c < d; ++c) {
                s.x[i * d + c] = dom.is_circle() ? wrap_circle(row[c]) : row[c];
                s.v[i * d + c] = row[d + c];
            }
            s.m[i] = row[2 * d];
        }
        if (mode == Mode::Discrete)
            for (double& w : s.m) w = 1.0 / static_cast<double>(s.size());
        validate(s, dom);
        return s;
    }
    if (n == 0) throw ConfigError("N must be positive");

    const double sigma = spec.get("sigma", 1.0);
    const double mean_v = spec.get("mean_v", 0.0);
    if (kind == "uniform") {
        const double hw = spec.get("half_width", 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < d; ++c) s.x[i * d + c] = detail::gen_position_uniform(g, dom, hw);
            for (std::size_t c = 0; c < d; ++c) s.v[i * d + c] = g.normal(c == 0 ? mean_v : 0.0, sigma);
        }
    } else if (kind == "jittered") {
        if (d != 1) throw ConfigError("jittered generator is one-dimensional");
        const double jitter = spec.get("jitter", 0.3);
        const double length = dom.is_circle() ? two_pi : 2.0 * spec.get("half_width", 1.0);
        const double h = length / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = h * (static_cast<double>(i) + 0.5 + jitter * g.uniform(-1.0, 1.0));
            s.x[i] = dom.is_circle() ? wrap_circle(x) : x - 0.5 * length;
            s.v[i] = g.normal(mean_v, sigma);
        }
    } else if (kind == "two_cluster") {
        const double sep = spec.get("separation", 2.0);
        const double spread = spec.get("spread", 0.1);
        const double u = spec.get("u", 1.0);
        const double vs = spec.get("sigma", 0.0);
        const double c0 = dom.is_circle() ? pi : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double side = i < n / 2 ? -1.0 : 1.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double centre = c == 0 ? c0 + 0.5 * side * sep : 0.0;
                s.x[i * d + c] = centre + g.uniform(-spread, spread);
                s.v[i * d + c] = (c == 0 ? -side * u : 0.0) + g.normal(0.0, vs);
            }
            if (dom.is_circle()) s.x[i] = wrap_circle(s.x[i]);
        }
    } else if (kind == "two_agent") {
        if (n != 2) throw ConfigError("two_agent generator needs N = 2");
        const double x0 = spec.get("x0", 1.0);
        const double v0 = spec.get("v0", -1.0);
        const double c0 = dom.is_circle() ? pi : 0.0;
        s.x[0] = c0 + x0;
        s.x[d] = c0 - x0;
        s.v[0] = v0;
        s.v[d] = -v0;
    } else if (kind == "parallel_lines") {
        if (d != 2 || dom.is_circle()) throw ConfigError("parallel_lines needs R^2");
        const double sep = spec.get("separation", 1.0);
        const double spacing = spec.get("spacing", 0.5);
        const double u = spec.get("u", 1.0);
        const std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i < n; ++i) {
            const bool upper = i < half;
            const double k = static_cast<double>(upper ? i : i - half);
            s.x[2 * i] = spacing * k;
            s.x[2 * i + 1] = upper ? 0.5 * sep : -0.5 * sep;
            s.v[2 * i] = upper ? u : -u;
        }
    } else if (kind == "vacuum_gap") {
        if (!dom.is_circle()) throw ConfigError("vacuum_gap needs the circle");
        const double fill = spec.get("fill", 0.5);
        if (!(fill > 0.0 && fill <= 1.0)) throw ConfigError("vacuum_gap: fill must lie in (0, 1]");
        for (std::size_t i = 0; i < n; ++i) {
            s.x[i] = wrap_circle(g.uniform(0.0, fill * two_pi));
            s.v[i] = g.normal(mean_v, sigma);
        }
    } else {
        throw ConfigError("unknown initial-data generator: " + kind);
    }

    if (mode == Mode::Lagrangian) {
        if (spec.get("weights", 0.0) != 0.0) {
            const double spread = spec.get("weight_spread", 0.5);
            if (!(spread >= 0.0 && spread < 1.0)) throw ConfigError("weight_spread must lie in [0, 1)");
            for (double& w : s.m) w = 1.0 + spread * g.uniform(-1.0, 1.0);
        }
        const double mass = spec.get("mass", 1.0);
        if (!(mass > 0.0)) throw ConfigError("mass must be positive");
        if (mass != 1.0 || spec.get("weights", 0.0) != 0.0) detail::normalize_weights(s, mass);
    }
    validate(s, dom);
    return s;
}

}  // namespace csalign
