#pragma once

// Named scenario library.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

namespace csalign {

namespace detail {

inline ScenarioConfig two_agent_base(std::string name, KernelSpec k, double x0, double v0) {
    ScenarioConfig c;
    c.name = std::move(name);
    c.domain = Domain::euclidean(1);
    c.kernel = k;
    c.N = 2;
    c.initial.kind = "two_agent";
    c.initial.params = {{"x0", x0}, {"v0", v0}};
    c.corrector_r0 = k.r0;
    return c;
}

inline ScenarioConfig torus_singular(double beta) {
    ScenarioConfig c;
    c.name = beta == 2.0 ? "torus-singular-beta2" : beta == 3.0 ? "torus-singular-beta3" : "torus-singular-beta2.5";
    c.description = "strongly singular kernel on the circle, jittered lattice start";
    c.domain = Domain::circle();
    c.kernel = KernelSpec::singular_power(1.0, beta, 1.0);
    c.N = 32;
    c.initial.kind = "jittered";
    c.initial.seed = 7;
    c.initial.params = {{"jitter", 0.3}, {"sigma", 1.0}};
    c.stepper.dt_max = 1e-2;
    c.horizon = 100.0;
    c.observer = ObserverSchedule::geometric(61, 0.01);
    c.corrector_r0 = 1.0;
    c.lyapunov = torus_default_constants(LyapunovVariant::CircleIII, 1.0, 1.0);
    c.collision = CollisionSpec{beta, 1.0};
    return c;
}

using Factory = std::function<ScenarioConfig()>;

inline const std::vector<std::pair<std::string, Factory>>& library() {
    static const std::vector<std::pair<std::string, Factory>> lib = {
        {"two-agent-smooth-collision",
         [] {
             // phi = 1 on the whole range the pair explores; unit weights give
             // x' = v, v' = -2v for the half-difference
             ScenarioConfig c = two_agent_base("two-agent-smooth-collision",
                                               KernelSpec::constant_near_zero(1.0, 10.0, 1.0), 0.5, -2.0);
             c.description = "smooth kernel, head-on pair that passes through the origin";
             c.mode = Mode::Lagrangian;
             c.initial.params["mass"] = 2.0;
             c.stepper.dt_max = 1e-2;
             c.horizon = 10.0;
             c.observer = ObserverSchedule::linear(1000);
             c.corrector_r0 = 1.0;
             return c;
         }},
        {"two-agent-weak-singular-collision",
         [] {
             ScenarioConfig c = two_agent_base("two-agent-weak-singular-collision",
                                               KernelSpec::singular_power(1.0, 0.5), 1.0, -5.0);
             c.description = "integrable singularity, K << 0: the pair reaches the origin in finite time";
             c.stepper.dt_max = 1e-2;
             c.horizon = 10.0;
             c.observer = ObserverSchedule::linear(1000);
             return c;
         }},
        {"two-agent-strong-singular",
         [] {
             ScenarioConfig c = two_agent_base("two-agent-strong-singular",
                                               KernelSpec::singular_power(1.0, 1.5), 1.0, -1.0);
             c.description = "non-integrable singularity: the approaching pair stops short of collision";
             c.stepper.dt_max = 2e-3;
             c.horizon = 1000.0;
             c.observer = ObserverSchedule::geometric(101, 0.01);
             return c;
         }},
        {"two-agent-fat-tail-escape",
         [] {
             ScenarioConfig c = two_agent_base("two-agent-fat-tail-escape",
                                               KernelSpec::singular_power(1.0, 2.0), 1.0, 1.0);
             c.description = "thin r^-2 tail: a receding pair keeps a positive relative speed";
             c.stepper.dt_max = 1e-2;
             c.horizon = 1000.0;
             c.observer = ObserverSchedule::geometric(61, 0.01);
             return c;
         }},
        {"parallel-lines-R2",
         [] {
             ScenarioConfig c;
             c.name = "parallel-lines-R2";
             c.description = "two rows moving in opposite directions, further apart than r0";
             c.domain = Domain::euclidean(2);
             c.kernel = KernelSpec::local(1.0, 1.0);
             c.N = 8;
             c.initial.kind = "parallel_lines";
             c.initial.params = {{"separation", 1.5}, {"spacing", 0.5}, {"u", 1.0}};
             c.stepper.dt_max = 1e-2;
             c.horizon = 100.0;
             c.observer = ObserverSchedule::linear(200);
             c.corrector_r0 = 1.0;
             return c;
         }},
        {"torus-local-ensemble",
         [] {
             ScenarioConfig c;
             c.name = "torus-local-ensemble";
             c.description = "sparse flock on the circle, local kernel, slow sticky aggregation";
             c.domain = Domain::circle();
             c.kernel = KernelSpec::local(1.0, 0.1);
             c.N = 64;
             c.initial.kind = "uniform";
             c.initial.seed = 1;
             c.initial.params = {{"sigma", 1e-3}};
             c.stepper.dt_max = 0.2;
             c.horizon = 1e4;
             c.observer = ObserverSchedule::geometric(81, 1.0);
             c.corrector_r0 = 0.09;
             c.lyapunov = torus_default_constants(LyapunovVariant::CircleI, 1.0, 0.09);
             return c;
         }},
        {"torus-singular-beta2", [] { return torus_singular(2.0); }},
        {"torus-singular-beta2.5", [] { return torus_singular(2.5); }},
        {"torus-singular-beta3", [] { return torus_singular(3.0); }},
        {"euclid-annular-fat-tail",
         [] {
             ScenarioConfig c;
             c.name = "euclid-annular-fat-tail";
             c.description = "zone of indifference r < r0 with a fat r^-1/2 tail";
             c.domain = Domain::euclidean(2);
             c.kernel = KernelSpec::annular(1.0, 1.0, 0.5);
             c.N = 32;
             c.initial.kind = "uniform";
             c.initial.seed = 3;
             c.initial.params = {{"half_width", 2.0}, {"sigma", 1.0}};
             c.stepper.dt_max = 0.1;
             c.horizon = 1e4;
             c.observer = ObserverSchedule::geometric(121, 0.01);
             c.corrector_r0 = 1.0;
             c.lyapunov = LyapunovConfig{LyapunovVariant::EuclideanV2, 1.0, 1.0, 1.0, 1.0};
             return c;
         }},
        {"euclid-classical-ensemble",
         [] {
             ScenarioConfig c;
             c.name = "euclid-classical-ensemble";
             c.description = "classical kernel in the plane";
             c.domain = Domain::euclidean(2);
             c.kernel = KernelSpec::classical(1.0, 0.5);
             c.N = 32;
             c.initial.kind = "uniform";
             c.initial.seed = 11;
             c.initial.params = {{"half_width", 2.0}, {"sigma", 1.0}};
             c.stepper.dt_max = 0.05;
             c.horizon = 100.0;
             c.observer = ObserverSchedule::linear(200);
             c.corrector_r0 = 1.0;
             c.lyapunov = LyapunovConfig{LyapunovVariant::EuclideanV4, 1.0, 1.0, 1.0, 1.0};
             return c;
         }},
        {"lagrangian-torus-weighted",
         [] {
             ScenarioConfig c;
             c.name = "lagrangian-torus-weighted";
             c.description = "mass-weighted particles on the circle, local kernel";
             c.domain = Domain::circle();
             c.kernel = KernelSpec::local(1.0, 0.5);
             c.N = 32;
             c.mode = Mode::Lagrangian;
             c.initial.kind = "uniform";
             c.initial.seed = 5;
             c.initial.params = {{"sigma", 0.5}, {"weights", 1.0}, {"weight_spread", 0.5}};
             c.stepper.dt_max = 0.05;
             c.horizon = 200.0;
             c.observer = ObserverSchedule::geometric(61, 0.1);
             c.corrector_r0 = 0.45;
             c.lyapunov = torus_default_constants(LyapunovVariant::CircleI, 1.0, 0.45);
             return c;
         }},
        {"vacuum-gap-torus",
         [] {
             ScenarioConfig c;
             c.name = "vacuum-gap-torus";
             c.description = "flock initially occupying 40% of the circle";
             c.domain = Domain::circle();
             c.kernel = KernelSpec::local(1.0, 0.3);
             c.N = 32;
             c.initial.kind = "vacuum_gap";
             c.initial.seed = 9;
             c.initial.params = {{"fill", 0.4}, {"sigma", 0.5}};
             c.stepper.dt_max = 0.05;
             c.horizon = 200.0;
             c.observer = ObserverSchedule::geometric(61, 0.1);
             c.corrector_r0 = 0.27;
             c.lyapunov = torus_default_constants(LyapunovVariant::CircleII, 1.0, 0.27);
             return c;
         }},
    };
    return lib;
}

}  // namespace detail

inline std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& [name, f] : detail::library()) names.push_back(name);
    std::sort(names.begin(), names.end());
    return names;
}

inline ScenarioConfig scenario(const std::string& name) {
    for (const auto& [n, f] : detail::library())
        if (n == name) {
            ScenarioConfig c = f();
            validate(c);
            return c;
        }
    throw ConfigError("unknown scenario: " + name);
}

}  // namespace csalign
