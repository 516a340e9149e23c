// csalign: run scenarios, fit decay rates, browse the scenario library and
// run acceptance suites.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <csalign/csalign.hpp>

namespace {

using namespace csalign;

ScenarioConfig resolve_config(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_config(arg);
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), arg) != names.end()) return scenario(arg);
    throw ConfigError("no config file or library scenario named " + arg);
}

void apply_overrides(ScenarioConfig& c, const std::optional<std::uint64_t>& seed, const std::optional<double>& horizon) {
    if (seed) c.initial.seed = *seed;
    if (horizon) c.horizon = *horizon;
    validate(c);
}

int cmd_run(const std::string& cfg_arg, const std::optional<std::uint64_t>& seed, const std::optional<double>& horizon,
            std::string out, const std::string& final_state) {
    ScenarioConfig c = resolve_config(cfg_arg);
    apply_overrides(c, seed, horizon);
    if (out.empty()) out = c.output;
    const Trajectory tr = run(c);
    if (out.empty() || out == "-") {
        write_trajectory_csv(std::cout, c, tr);
    } else {
        std::ofstream os(out);
        if (!os) throw DataError("cannot write " + out);
        write_trajectory_csv(os, c, tr);
    }
    if (!final_state.empty()) {
        std::ofstream os(final_state);
        write_state_table(os, tr.final_state);
    }
    if (tr.failure) {
        std::cerr << "run stopped early: " << tr.failure->message << "\n";
        return 3;
    }
    return 0;
}

int cmd_rates(const std::string& path, const std::string& model, std::vector<double> window, const std::string& column) {
    const CsvTable tab = read_csv_file(path);
    const std::vector<double> t = tab.column("t");
    const std::vector<double> v = tab.column(column);
    RateWindow w = default_window(t);
    if (window.size() == 2) w = {window[0], window[1]};
    else if (!window.empty()) throw ConfigError("--window takes two values");
    const RateFit f = rate_fit(t, v, rate_model_from_string(model), w);
    std::cout << "model " << to_string(f.model) << "\n"
              << "column " << column << "\n"
              << "window " << fmt17(f.window.t_lo) << " " << fmt17(f.window.t_hi) << "\n"
              << "samples " << f.samples << "\n"
              << "exponent " << fmt17(f.exponent) << "\n"
              << "amplitude " << fmt17(f.amplitude) << "\n"
              << "residual " << fmt17(f.residual) << "\n";
    return 0;
}

int cmd_accept(const std::string& suite, const std::string& out) {
    AcceptanceOptions opt;
    opt.out_dir = out;
    const auto results = run_acceptance(suite, opt, &std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.pass() ? 0 : 1;
    std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cucker-Smale alignment laboratory"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::optional<double> horizon;
    std::string out;
    app.add_option("--seed", seed, "override the initial-data seed");
    app.add_option("--horizon", horizon, "override the final time");
    app.add_option("--out", out, "output file (run) or directory (accept)");

    std::string cfg_arg, final_state;
    auto* run_cmd = app.add_subcommand("run", "simulate a config file or library scenario, write CSV");
    run_cmd->add_option("config", cfg_arg, "config file (JSON) or scenario name")->required();
    run_cmd->add_option("--final-state", final_state, "write the final agent table here");

    std::string csv_path, model = "power", column = "V2";
    std::vector<double> window;
    auto* rates_cmd = app.add_subcommand("rates", "fit a decay rate to a CSV column");
    rates_cmd->add_option("csv", csv_path, "diagnostics CSV")->required();
    rates_cmd->add_option("--model", model, "power | log_over_t");
    rates_cmd->add_option("--window", window, "t_lo t_hi (default: last two decades)")->expected(2);
    rates_cmd->add_option("--column", column, "column to fit");

    std::string action, name;
    auto* sc_cmd = app.add_subcommand("scenario", "list or show library scenarios");
    sc_cmd->add_option("action", action, "list | show")->required()->check(CLI::IsMember({"list", "show"}));
    sc_cmd->add_option("name", name, "scenario name (show)");

    std::string suite;
    auto* acc_cmd = app.add_subcommand("accept", "run an acceptance suite");
    acc_cmd->add_option("suite", suite, "suite name")->required();

    for (auto* sub : {run_cmd, rates_cmd, sc_cmd, acc_cmd}) {
        sub->add_option("--seed", seed, "override the initial-data seed");
        sub->add_option("--horizon", horizon, "override the final time");
        sub->add_option("--out", out, "output file (run) or directory (accept)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(cfg_arg, seed, horizon, out, final_state);
        if (rates_cmd->parsed()) return cmd_rates(csv_path, model, window, column);
        if (sc_cmd->parsed()) {
            if (action == "list") {
                for (const auto& n : scenario_names()) std::cout << n << "\n";
                return 0;
            }
            if (name.empty()) throw ConfigError("scenario show needs a name");
            ScenarioConfig c = scenario(name);
            apply_overrides(c, seed, horizon);
            std::cout << serialize(c);
            return 0;
        }
        if (acc_cmd->parsed()) {
            const auto names = suite_names();
            if (std::find(names.begin(), names.end(), suite) == names.end()) {
                std::cerr << "unknown suite '" << suite << "'; available:";
                for (const auto& n : names) std::cerr << " " << n;
                std::cerr << "\n";
                return 2;
            }
            return cmd_accept(suite, out);
        }
    } catch (const csalign::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
