#pragma once

// Scenario configuration: JSON I/O, validation and a stable content hash.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "diagnostics.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "initial_data.hpp"
#include "integrate.hpp"
#include "kernels.hpp"

namespace csalign {

struct ScenarioConfig {
    std::string name = "unnamed";
    std::string description;
    Domain domain = Domain::euclidean(1);
    KernelSpec kernel;
    std::size_t N = 2;
    Mode mode = Mode::Discrete;
    InitialDataSpec initial;
    StepperConfig stepper;
    double horizon = 10.0;
    ObserverSchedule observer = ObserverSchedule::linear(100);
    double corrector_r0 = 1.0;
    std::optional<LyapunovConfig> lyapunov;
    std::optional<CollisionSpec> collision;
    std::string output;

    bool operator==(const ScenarioConfig&) const = default;
};

inline void validate(const ScenarioConfig& c) {
    validate(c.kernel);
    validate(c.stepper);
    if (c.N == 0) throw ConfigError("N must be positive");
    if (c.initial.kind == "table" && c.initial.table.size() != c.N)
        throw ConfigError("N does not match the number of table rows");
    if (!(c.horizon >= 0.0) || !std::isfinite(c.horizon)) throw ConfigError("horizon must be finite and >= 0");
    if (!(c.corrector_r0 > 0.0)) throw ConfigError("corrector_r0 must be positive");
    if (c.domain.is_circle() && !(c.corrector_r0 < pi)) throw ConfigError("circle corrector needs r0 < pi");
    if (c.observer.kind != ObserverSchedule::Kind::EveryStep && c.observer.count == 0)
        throw ConfigError("observer count must be positive");
    if (c.observer.kind == ObserverSchedule::Kind::Geometric && !(c.observer.t_first > 0.0))
        throw ConfigError("geometric observer needs t_first > 0");
    if (c.observer.kind == ObserverSchedule::Kind::EveryStep && c.observer.stride == 0)
        throw ConfigError("observer stride must be positive");
    if (c.lyapunov) {
        const LyapunovConfig& l = *c.lyapunov;
        validate(l);
        if (is_circle_variant(l.variant) != c.domain.is_circle())
            throw ConfigError("lyapunov variant " + std::string(to_string(l.variant)) + " does not match the domain");
        if (l.variant == LyapunovVariant::EuclideanV4 && is_singular(c.kernel))
            throw ConfigError("euclidean_v4 needs a smooth kernel");
        if (!c.domain.is_circle() && !has_fat_tail(c.kernel))
            throw ConfigError("euclidean lyapunov variants need a fat-tailed kernel");
    }
    if (c.collision) {
        if (!(c.collision->beta >= 2.0)) throw ConfigError("collision potential needs beta >= 2");
        if (!(c.collision->r0 > 0.0)) throw ConfigError("collision r0 must be positive");
    }
}

using json = nlohmann::json;

inline json to_json(const KernelSpec& k) {
    return {{"kind", to_string(k.kind)}, {"lambda", k.lambda}, {"Lambda", k.Lambda},
            {"beta", k.beta},            {"r0", k.r0},         {"moll_width", k.moll_width}};
}

inline KernelSpec kernel_from_json(const json& j) {
    KernelSpec k;
    k.kind = kernel_kind_from_string(j.at("kind").get<std::string>());
    k.lambda = j.value("lambda", 1.0);
    k.Lambda = j.value("Lambda", k.lambda);
    k.beta = j.value("beta", 0.0);
    k.r0 = j.value("r0", 1.0);
    k.moll_width = j.value("moll_width", k.kind == KernelKind::LocalMollified ? 0.1 * k.r0 : 0.0);
    return k;
}

inline json to_json(const Domain& d) {
    if (d.is_circle()) return {{"kind", "circle"}};
    return {{"kind", "euclidean"}, {"dim", d.dim}};
}

inline Domain domain_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle") return Domain::circle();
    if (kind == "euclidean") return Domain::euclidean(j.value("dim", std::size_t{1}));
    throw ConfigError("unknown domain kind: " + kind);
}

inline json to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    if (!c.description.empty()) j["description"] = c.description;
    j["domain"] = to_json(c.domain);
    j["kernel"] = to_json(c.kernel);
    j["N"] = c.N;
    j["mode"] = to_string(c.mode);
    json init = {{"kind", c.initial.kind}, {"seed", c.initial.seed}};
    for (const auto& [key, val] : c.initial.params) init["params"][key] = val;
    if (!c.initial.table.empty()) init["table"] = c.initial.table;
    j["initial"] = init;
    json st = {{"dt_max", c.stepper.dt_max}, {"safety", c.stepper.safety}, {"method", to_string(c.stepper.method)}};
    if (c.stepper.d_guard) st["d_guard"] = *c.stepper.d_guard;
    j["stepper"] = st;
    j["horizon"] = c.horizon;
    json obs = {{"kind", to_string(c.observer.kind)}};
    if (c.observer.kind == ObserverSchedule::Kind::EveryStep) {
        obs["stride"] = c.observer.stride;
    } else {
        obs["count"] = c.observer.count;
        if (c.observer.kind == ObserverSchedule::Kind::Geometric) obs["t_first"] = c.observer.t_first;
    }
    j["observer"] = obs;
    j["corrector_r0"] = c.corrector_r0;
    if (c.lyapunov)
        j["lyapunov"] = {{"variant", to_string(c.lyapunov->variant)},
                         {"a", c.lyapunov->a},
                         {"b", c.lyapunov->b},
                         {"c", c.lyapunov->c},
                         {"r0", c.lyapunov->r0}};
    if (c.collision) j["collision"] = {{"beta", c.collision->beta}, {"r0", c.collision->r0}};
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

inline ScenarioConfig config_from_json(const json& j) {
    try {
        ScenarioConfig c;
        c.name = j.value("name", std::string("unnamed"));
        c.description = j.value("description", std::string());
        c.domain = domain_from_json(j.at("domain"));
        c.kernel = kernel_from_json(j.at("kernel"));
        c.N = j.at("N").get<std::size_t>();
        c.mode = mode_from_string(j.value("mode", std::string("discrete")));
        const json& init = j.at("initial");
        c.initial.kind = init.at("kind").get<std::string>();
        c.initial.seed = init.value("seed", std::uint64_t{1});
        if (init.contains("params"))
            for (const auto& [key, val] : init.at("params").items()) c.initial.params[key] = val.get<double>();
        if (init.contains("table")) c.initial.table = init.at("table").get<std::vector<std::vector<double>>>();
        if (j.contains("stepper")) {
            const json& st = j.at("stepper");
            c.stepper.dt_max = st.value("dt_max", c.stepper.dt_max);
            c.stepper.safety = st.value("safety", c.stepper.safety);
            if (st.contains("d_guard")) c.stepper.d_guard = st.at("d_guard").get<double>();
            const std::string m = st.value("method", std::string("rk4"));
            if (m == "rk4") c.stepper.method = StepMethod::RK4Adaptive;
            else if (m == "euler") c.stepper.method = StepMethod::EulerExplicit;
            else throw ConfigError("unknown stepper method: " + m);
        }
        c.horizon = j.at("horizon").get<double>();
        if (j.contains("observer")) {
            const json& o = j.at("observer");
            const std::string kind = o.value("kind", std::string("linear"));
            if (kind == "linear") c.observer = ObserverSchedule::linear(o.value("count", std::size_t{100}));
            else if (kind == "geometric")
                c.observer = ObserverSchedule::geometric(o.value("count", std::size_t{100}), o.value("t_first", 1.0));
            else if (kind == "every_step") c.observer = ObserverSchedule::every_step(o.value("stride", std::size_t{1}));
            else throw ConfigError("unknown observer kind: " + kind);
        }
        c.corrector_r0 = j.value("corrector_r0", c.kernel.r0);
        if (j.contains("lyapunov")) {
            const json& l = j.at("lyapunov");
            LyapunovConfig lc;
            lc.variant = lyapunov_variant_from_string(l.at("variant").get<std::string>());
            lc.a = l.value("a", 1.0);
            lc.b = l.value("b", 1.0);
            lc.c = l.value("c", 1.0);
            lc.r0 = l.value("r0", c.corrector_r0);
            c.lyapunov = lc;
        }
        if (j.contains("collision"))
            c.collision = CollisionSpec{j.at("collision").value("beta", c.kernel.beta),
                                        j.at("collision").value("r0", c.kernel.r0)};
        c.output = j.value("output", std::string());
        validate(c);
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

inline ScenarioConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

inline std::string serialize(const ScenarioConfig& c) { return to_json(c).dump(2) + "\n"; }

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// FNV-1a over the canonical (key-sorted, compact) serialization.
inline std::uint64_t scenario_hash(const ScenarioConfig& c) {
    const std::string text = to_json(c).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline FlockState initial_state(const ScenarioConfig& c) { return generate(c.initial, c.N, c.domain, c.mode); }

inline DiagnosticsOptions diagnostics_options(const ScenarioConfig& c) {
    return {c.corrector_r0, c.lyapunov, c.collision};
}

inline Trajectory run(const ScenarioConfig& c, bool keep_snapshots = false) {
    validate(c);
    IntegrateOptions opt{diagnostics_options(c), keep_snapshots};
    return integrate(initial_state(c), c.kernel, c.domain, c.stepper, c.horizon, c.observer, opt);
}

}  // namespace csalign
