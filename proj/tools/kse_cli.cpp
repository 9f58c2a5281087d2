// Command-line runner for the KSE experiments.
//
//   kse_cli solve     --preset ex2-chaos --out out/chaos
//   kse_cli converge  --config ex1.json --set k=[0.02,0.01] --out out/ex1
//   kse_cli stability --set y=-20i --set resolution=256
//   kse_cli table     --preset ex1-gre
//   kse_cli presets

#include "kse/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <utility>

namespace ex = kse::experiment;

namespace {

struct Options {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool dry_run = false;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ex::ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Builds the config for a subcommand, filling in its default mode.
ex::ExperimentConfig load(const Options& o, const std::string& subcommand) {
    if (!o.config_path.empty() && !o.preset.empty()) {
        throw ex::ConfigError("give either --config or --preset, not both");
    }
    std::string text = "{}";
    if (!o.config_path.empty()) text = read_text(o.config_path);
    if (!o.preset.empty()) text = ex::serialize_config(ex::preset(o.preset));
    auto j = nlohmann::json::parse(ex::apply_overrides(text, o.overrides));
    if (!j.contains("mode")) {
        if (subcommand == "solve") j["mode"] = "solve";
        else if (subcommand == "stability") j["mode"] = "stability";
        else if (subcommand == "table") j["mode"] = "gre-table";
        else if (subcommand == "converge") {
            const bool space = j.contains("h") && j["h"].is_array() && j["h"].size() > 1;
            j["mode"] = space ? "converge-space-time" : "converge-time";
        }
    }
    auto config = ex::parse_config(j.dump());
    const auto mode = config.mode;
    const bool ok = subcommand == "table" ||
                    (subcommand == "solve" && mode == ex::Mode::kSolve) ||
                    (subcommand == "stability" && mode == ex::Mode::kStability) ||
                    (subcommand == "converge" && (mode == ex::Mode::kConvergeSpaceTime ||
                                                  mode == ex::Mode::kConvergeTime));
    if (!ok) {
        throw ex::ConfigError("mode '" + ex::to_string(mode) + "' does not belong to '" + subcommand + "'");
    }
    return config;
}

int execute(const Options& o, const std::string& subcommand) {
    try {
        const auto config = load(o, subcommand);
        if (o.dry_run) {
            std::cout << ex::serialize_config(config) << "\n";
            return ex::kExitOk;
        }
        std::string dir = o.out_dir;
        if (dir.empty()) dir = config.output.empty() ? "out" : config.output;
        const auto outcome = ex::run(config, dir);
        std::cout << outcome.report_json;
        if (outcome.exit_code == ex::kExitUnstable) {
            std::cerr << "numerical instability; partial results written to " << dir << "\n";
        }
        return outcome.exit_code;
    } catch (const ex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ex::kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return ex::kExitConfig;
    } catch (const ex::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return ex::kExitIo;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kuramoto-Sivashinsky experiments: compact differences in space, IMEXRK4 in time"};
    app.require_subcommand(1);

    Options opts;
    std::string chosen;
    const std::pair<const char*, const char*> subcommands[] = {
        {"solve", "integrate one problem, writing snapshots and errors"},
        {"converge", "space-time or temporal convergence table"},
        {"stability", "|r(x, y)| fields and stability boundaries"},
        {"table", "GRE at fixed times against literature values"},
    };
    for (const auto& [name, help] : subcommands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "JSON config file");
        sub->add_option("--preset", opts.preset, "built-in config (see `presets`)");
        sub->add_option("--set", opts.overrides, "override a config key, key=value")->take_all();
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_flag("--dry-run", opts.dry_run, "print the validated config and exit");
        sub->callback([&chosen, name] { chosen = name; });
    }
    app.add_subcommand("presets", "list built-in configs")->callback([&chosen] { chosen = "presets"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ex::kExitConfig;
    }
    if (chosen == "presets") {
        for (const auto& name : ex::preset_names()) std::cout << name << "\n";
        return ex::kExitOk;
    }
    return execute(opts, chosen);
}
