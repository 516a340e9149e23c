#pragma once

// Weighted Cucker-Smale right-hand side and a singularity-aware RK4 stepper.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "state.hpp"

namespace csalign {

enum class StepMethod { RK4Adaptive, EulerExplicit };

inline std::string_view to_string(StepMethod m) {
    return m == StepMethod::RK4Adaptive ? "rk4" : "euler";
}

struct StepperConfig {
    double dt_max = 1e-2;
    double safety = 0.5;
    /// Minimal admissible separation; empty selects 1e-9 for singular kernels and 0 otherwise.
    std::optional<double> d_guard;
    StepMethod method = StepMethod::RK4Adaptive;

    bool operator==(const StepperConfig&) const = default;
};

inline void validate(const StepperConfig& c) {
    if (!(c.dt_max > 0.0) || !std::isfinite(c.dt_max)) throw ConfigError("stepper: dt_max must be positive");
    if (!(c.safety > 0.0 && c.safety < 1.0)) throw ConfigError("stepper: safety must lie in (0,1)");
    if (c.d_guard && !(*c.d_guard >= 0.0)) throw ConfigError("stepper: d_guard must be nonnegative");
}

inline double resolved_guard(const StepperConfig& c, const KernelSpec& k) {
    if (c.d_guard) return *c.d_guard;
    return is_singular(k) ? 1e-9 : 0.0;
}

inline constexpr double min_step = 1e-14;

/// Pairwise summaries gathered during one right-hand-side evaluation.
struct PairSummary {
    double dissipation = 0.0;  // I_2 = 2 sum_{i,j} m_i m_j phi_ij |v_ij|^2
    double max_rate = 0.0;     // max_i sum_j m_j phi_ij
    double max_rel_speed = 0.0;
    ClosestPair closest;
};

namespace detail {

// One O(N^2) pass over unordered pairs. Accumulation order is fixed by (i, j),
// so results do not depend on anything but the inputs.
inline PairSummary evaluate(const FlockState& s, const KernelSpec& k, const Domain& dom,
                            std::vector<double>& acc) {
    const std::size_t n = s.size(), d = s.dim;
    acc.assign(n * d, 0.0);
    std::vector<double> rate(n, 0.0);
    PairSummary out;
    const bool singular = is_singular(k);
    double diss = 0.0, vmax2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = &s.x[i * d];
        const double* vi = &s.v[i * d];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = &s.x[j * d];
            const double* vj = &s.v[j * d];
            double r;
            if (dom.is_circle()) {
                r = std::abs(minimal_image(xi[0] - xj[0]));
            } else {
                double q = 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    const double dx = xi[c] - xj[c];
                    q += dx * dx;
                }
                r = std::sqrt(q);
            }
            if (r < out.closest.distance) out.closest = {i, j, r};
            if (r == 0.0 && singular) throw CollisionError(i, j, s.t);
            const double phi = eval(k, r);
            double w2 = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double dv = vj[c] - vi[c];
                w2 += dv * dv;
                acc[i * d + c] += s.m[j] * phi * dv;
                acc[j * d + c] -= s.m[i] * phi * dv;
            }
            vmax2 = std::max(vmax2, w2);
            diss += s.m[i] * s.m[j] * phi * w2;
            rate[i] += s.m[j] * phi;
            rate[j] += s.m[i] * phi;
        }
    }
    out.dissipation = 4.0 * diss;
    out.max_rel_speed = std::sqrt(vmax2);
    for (double r : rate) out.max_rate = std::max(out.max_rate, r);
    return out;
}

}  // namespace detail

/// a_i = sum_{j != i} m_j phi(|x_ij|) (v_j - v_i), minimal image on the circle.
/// Throws CollisionError for a coincident pair under a singular kernel.
inline std::vector<double> rhs(const FlockState& s, const KernelSpec& k, const Domain& dom) {
    std::vector<double> acc;
    detail::evaluate(s, k, dom, acc);
    return acc;
}

struct StepResult {
    FlockState state;
    double dt = 0.0;
    int rejections = 0;
    /// int M * I_2 dt over the step, integrated with the step's own quadrature.
    double dissipated = 0.0;
};

/// One accepted step. The step is bounded by dt_max, by `cap` (distance to the
/// next output time), by safety / max_i sum_j m_j phi_ij, and for singular
/// kernels by safety * d_min / (U_max + eps). Stages that bring a pair below the
/// guard distance are rejected and the step halved.
inline StepResult step(const FlockState& s, const KernelSpec& k, const Domain& dom, const StepperConfig& cfg,
                       double cap = std::numeric_limits<double>::infinity()) {
    const std::size_t n = s.size(), d = s.dim;
    const double mass = s.total_mass();
    const bool singular = is_singular(k);
    const double guard = resolved_guard(cfg, k);

    std::vector<double> a1;
    const PairSummary p1 = detail::evaluate(s, k, dom, a1);

    double limit = cfg.dt_max;
    if (p1.max_rate > 0.0) limit = std::min(limit, cfg.safety / p1.max_rate);
    if (singular && n > 1) limit = std::min(limit, cfg.safety * p1.closest.distance / (p1.max_rel_speed + 1e-300));
    if (limit < min_step)
        throw StiffnessError(p1.closest.i, p1.closest.j, s.t, limit, p1.closest.distance);
    double dt = std::min(limit, cap);
    // land on the cap rather than leave a sliver of rounding size behind
    if (cap > dt && cap - dt <= 1e-9 * dt) dt = cap;

    StepResult res;
    FlockState stage = s;
    std::vector<double> a2, a3, a4;
    for (;;) {
        bool ok = true;
        FlockState next = s;
        if (cfg.method == StepMethod::EulerExplicit) {
            for (std::size_t q = 0; q < n * d; ++q) {
                next.x[q] = s.x[q] + dt * s.v[q];
                next.v[q] = s.v[q] + dt * a1[q];
            }
            res.dissipated = dt * mass * p1.dissipation;
        } else {
            auto make_stage = [&](double h, const std::vector<double>& dx, const std::vector<double>& dv) {
                for (std::size_t q = 0; q < n * d; ++q) {
                    stage.x[q] = s.x[q] + h * dx[q];
                    stage.v[q] = s.v[q] + h * dv[q];
                }
                stage.t = s.t + h;
            };
            try {
                make_stage(0.5 * dt, s.v, a1);
                const std::vector<double> v2 = stage.v;
                const PairSummary p2 = detail::evaluate(stage, k, dom, a2);
                make_stage(0.5 * dt, v2, a2);
                const std::vector<double> v3 = stage.v;
                const PairSummary p3 = detail::evaluate(stage, k, dom, a3);
                make_stage(dt, v3, a3);
                const std::vector<double> v4 = stage.v;
                const PairSummary p4 = detail::evaluate(stage, k, dom, a4);
                if (singular && std::min({p2.closest.distance, p3.closest.distance, p4.closest.distance}) < guard)
                    ok = false;
                for (std::size_t q = 0; q < n * d; ++q) {
                    next.x[q] = s.x[q] + dt / 6.0 * (s.v[q] + 2.0 * v2[q] + 2.0 * v3[q] + v4[q]);
                    next.v[q] = s.v[q] + dt / 6.0 * (a1[q] + 2.0 * a2[q] + 2.0 * a3[q] + a4[q]);
                }
                res.dissipated = dt / 6.0 * mass *
                                 (p1.dissipation + 2.0 * p2.dissipation + 2.0 * p3.dissipation + p4.dissipation);
            } catch (const CollisionError&) {
                ok = false;
            }
        }
        if (ok && singular && n > 1 && closest_pair(next, dom).distance < guard) ok = false;
        if (ok) {
            next.t = s.t + dt;
            if (dom.is_circle())
                for (double& c : next.x) c = wrap_circle(c);
            res.state = std::move(next);
            res.dt = dt;
            return res;
        }
        dt *= 0.5;
        ++res.rejections;
        if (dt < min_step) {
            const ClosestPair cp = closest_pair(s, dom);
            throw StiffnessError(cp.i, cp.j, s.t, dt, cp.distance);
        }
    }
}

}  // namespace csalign
