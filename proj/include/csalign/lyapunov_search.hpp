#pragma once

// Grid search for Lyapunov constants (a, b, c) that make L non-increasing
// along a recorded trajectory. Only the records are needed: L is reassembled
// from the sampled correctors and variations.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "diagnostics.hpp"
#include "errors.hpp"

namespace csalign {

struct DescentReport {
    LyapunovConfig config;
    std::size_t steps = 0;
    std::size_t violations = 0;
    double worst_increase = 0.0;  // largest L(k+1) - L(k), relative to 1 + |L(0)|
    double tolerance = 0.0;

    double descent_fraction() const {
        return steps ? 1.0 - static_cast<double>(violations) / static_cast<double>(steps) : 1.0;
    }
};

/// Counts increments L(k+1) > L(k) + tol_rel (1 + |L(0)|) along the records.
/// `n_eff` is the effective agent count of the flock.
inline DescentReport check_descent(std::span<const DiagnosticsRecord> recs, const LyapunovConfig& cfg, double n_eff,
                                   double tol_rel = 1e-6) {
    if (recs.size() < 2) throw InsufficientData("descent check needs at least two records");
    const bool v4 = cfg.variant == LyapunovVariant::EuclideanV4;
    auto L = [&](const DiagnosticsRecord& r) {
        if (v4 && !r.G3) throw UnsupportedQuery("records carry no third-order corrector");
        return detail::assemble_lyapunov(cfg, r.t, n_eff, r.G, r.G3.value_or(0.0), r.V1, r.V2);
    };
    DescentReport rep;
    rep.config = cfg;
    double prev = L(recs[0]);
    const double scale = 1.0 + std::abs(prev);
    rep.tolerance = tol_rel * scale;
    for (std::size_t k = 1; k < recs.size(); ++k) {
        const double cur = L(recs[k]);
        const double inc = cur - prev;
        ++rep.steps;
        if (inc > rep.tolerance) ++rep.violations;
        rep.worst_increase = std::max(rep.worst_increase, inc / scale);
        prev = cur;
    }
    return rep;
}

struct SearchGrid {
    std::vector<double> a = {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
    std::vector<double> b = {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0};
    std::vector<double> c = {0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0};
};

/// Among grid points reaching the target descent fraction, the one with the
/// smallest a + b + c; otherwise the point with the highest fraction.
/// Constants a variant does not use are pinned to the first grid value.
inline DescentReport search_constants(std::span<const DiagnosticsRecord> recs, LyapunovVariant variant, double r0,
                                      double n_eff, const SearchGrid& grid = {}, double target = 0.99,
                                      double tol_rel = 1e-6) {
    const bool uses_b = variant != LyapunovVariant::EuclideanV4;
    const bool uses_c = variant == LyapunovVariant::CircleI;
    const std::vector<double> bs = uses_b ? grid.b : std::vector<double>{grid.b.front()};
    const std::vector<double> cs = uses_c ? grid.c : std::vector<double>{grid.c.front()};
    DescentReport best;
    bool have = false, best_ok = false;
    double best_cost = INFINITY;
    for (double a : grid.a)
        for (double b : bs)
            for (double c : cs) {
                const DescentReport r = check_descent(recs, {variant, a, b, c, r0}, n_eff, tol_rel);
                const bool ok = r.descent_fraction() >= target;
                const double cost = a + b + c;
                bool take = !have;
                if (have) {
                    if (ok && !best_ok) take = true;
                    else if (ok && best_ok) take = cost < best_cost;
                    else if (!ok && !best_ok) take = r.descent_fraction() > best.descent_fraction();
                }
                if (take) {
                    best = r;
                    best_ok = ok;
                    best_cost = cost;
                    have = true;
                }
            }
    return best;
}

}  // namespace csalign
