#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diagnostics.hpp"
#include "dynamics.hpp"
#include "errors.hpp"

namespace csalign {

/// When diagnostics are recorded. The initial time is always sampled.
struct ObserverSchedule {
    enum class Kind { Linear, Geometric, EveryStep };

    Kind kind = Kind::Linear;
    std::size_t count = 100;  // number of sample times after t0 (Linear / Geometric)
    double t_first = 1.0;     // first geometric sample time, measured from t0
    std::size_t stride = 1;   // EveryStep: keep every stride-th accepted step

    bool operator==(const ObserverSchedule&) const = default;

    static ObserverSchedule linear(std::size_t n) { return {Kind::Linear, n, 1.0, 1}; }
    static ObserverSchedule geometric(std::size_t n, double first = 1.0) { return {Kind::Geometric, n, first, 1}; }
    static ObserverSchedule every_step(std::size_t stride = 1) { return {Kind::EveryStep, 0, 1.0, stride}; }

    /// Sample times in (t0, horizon], ending exactly at the horizon.
    std::vector<double> times(double t0, double horizon) const {
        std::vector<double> out;
        if (!(horizon > t0) || kind == Kind::EveryStep) return out;
        const double span = horizon - t0;
        if (kind == Kind::Linear) {
            for (std::size_t k = 1; k <= count; ++k)
                out.push_back(k == count ? horizon : t0 + span * static_cast<double>(k) / static_cast<double>(count));
        } else {
            const double first = std::min(t_first, span);
            if (count <= 1 || first >= span) return {horizon};
            const double ratio = std::log(span / first) / static_cast<double>(count - 1);
            for (std::size_t k = 0; k < count; ++k)
                out.push_back(k + 1 == count ? horizon : t0 + first * std::exp(ratio * static_cast<double>(k)));
        }
        return out;
    }
};

inline std::string_view to_string(ObserverSchedule::Kind k) {
    switch (k) {
        case ObserverSchedule::Kind::Linear: return "linear";
        case ObserverSchedule::Kind::Geometric: return "geometric";
        case ObserverSchedule::Kind::EveryStep: return "every_step";
    }
    return "?";
}

struct RunFailure {
    std::string kind;     // "stiffness" or "collision"
    std::string message;
    double t = 0.0;
    std::size_t i = 0, j = 0;
    double separation = 0.0;
};

struct StepStatistics {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double dt_min = 0.0;
    double dt_max = 0.0;
};

struct Trajectory {
    std::vector<DiagnosticsRecord> records;
    std::vector<FlockState> snapshots;  // filled when requested, aligned with records
    FlockState final_state;
    std::optional<RunFailure> failure;
    StepStatistics stats;

    bool ok() const noexcept { return !failure.has_value(); }
};

struct IntegrateOptions {
    DiagnosticsOptions diagnostics;
    bool keep_snapshots = false;
};

/// Advances `s` to `horizon`, recording diagnostics on the schedule. Step
/// failures end the run early; the partial trajectory carries the failure.
inline Trajectory integrate(FlockState s, const KernelSpec& k, const Domain& dom, const StepperConfig& cfg,
                            double horizon, const ObserverSchedule& sched, const IntegrateOptions& opt = {}) {
    validate(s, dom);
    validate(cfg);
    Trajectory traj;
    traj.final_state = s;
    if (!(horizon > s.t)) return traj;

    double dissipated = 0.0;
    auto observe = [&](const FlockState& st) {
        traj.records.push_back(make_record(st, k, dom, opt.diagnostics, dissipated));
        if (opt.keep_snapshots) traj.snapshots.push_back(st);
    };
    observe(s);

    const std::vector<double> targets = sched.times(s.t, horizon);
    const bool every = sched.kind == ObserverSchedule::Kind::EveryStep;
    std::size_t next = 0;
    std::size_t since_kept = 0;
    double dt_lo = INFINITY, dt_hi = 0.0;
    while (s.t < horizon) {
        const double target = every ? horizon : targets[next];
        const double cap = target - s.t;
        try {
            StepResult r = step(s, k, dom, cfg, cap);
            const bool landed = r.dt >= cap;
            s = std::move(r.state);
            if (landed) s.t = target;
            dissipated += r.dissipated;
            traj.stats.accepted += 1;
            traj.stats.rejected += static_cast<std::size_t>(r.rejections);
            dt_lo = std::min(dt_lo, r.dt);
            dt_hi = std::max(dt_hi, r.dt);
            if (every) {
                if (++since_kept >= sched.stride || s.t >= horizon) {
                    observe(s);
                    since_kept = 0;
                }
            } else if (landed) {
                observe(s);
                ++next;
                // several targets may coincide after rounding
                while (next < targets.size() && targets[next] <= s.t) ++next;
                if (next >= targets.size()) break;
            }
        } catch (const StiffnessError& e) {
            traj.failure = RunFailure{"stiffness", e.what(), e.time(), e.first(), e.second(), e.separation()};
            break;
        } catch (const CollisionError& e) {
            traj.failure = RunFailure{"collision", e.what(), e.time(), e.first(), e.second(), 0.0};
            break;
        }
    }
    traj.stats.dt_min = traj.stats.accepted ? dt_lo : 0.0;
    traj.stats.dt_max = dt_hi;
    traj.final_state = std::move(s);
    return traj;
}

}  // namespace csalign
