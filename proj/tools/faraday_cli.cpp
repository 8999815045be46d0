#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "faraday/scenario.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRegimeViolation = 3;
constexpr int kExitNumericFailure = 4;

void print_summary(const faraday::RunManifest& man, const std::string& out_dir) {
    std::printf("scenario outputs written to %s\n", out_dir.c_str());
    for (const auto& f : man.outputs) std::printf("  %s\n", f.c_str());
    std::printf("  manifest.json\n");
    const auto& r = man.regime;
    std::printf("regime: EIT condition 1 %s, condition 2 %s",
                r.eit_1_pass ? "pass" : "FAIL", r.eit_2_pass ? "pass" : "FAIL");
    if (r.has_medium)
        std::printf(", thin-medium value %.4g (%s)", r.thin_medium_value,
                    r.thin_medium_pass ? "pass" : "FAIL");
    std::printf("\nconfig hash %s, %.3f s\n", man.config_hash.c_str(),
                man.timing_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal oscillations of nonlinear Faraday rotation in a driven "
                 "four-level medium: master-equation and closed-form simulator"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> set_pairs;
    long seed = 0;
    bool seed_given = false;
    bool strict = false;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--set", set_pairs,
                   "override a config key, dotted path (e.g. system.delta=0.05)")
        ->take_all();
    app.add_option("--seed", seed, "reserved; the dynamics are deterministic")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_flag("--strict", strict, "exit with code 3 when regime conditions fail");

    for (const char* name :
         {"fig2", "rotation", "sweep_b", "cross_mod", "regime_check"})
        app.add_subcommand(name, "run the '" + std::string(name) + "' scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        nlohmann::json doc = nlohmann::json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) {
                std::fprintf(stderr, "error: cannot read config '%s'\n",
                             config_path.c_str());
                return kExitConfigError;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            try {
                doc = nlohmann::json::parse(buf.str());
            } catch (const nlohmann::json::parse_error& e) {
                std::fprintf(stderr, "error: invalid JSON in '%s': %s\n",
                             config_path.c_str(), e.what());
                return kExitConfigError;
            }
        }

        const auto subcommands = app.get_subcommands();
        if (!subcommands.empty()) {
            const std::string name = subcommands.front()->get_name();
            if (doc.contains("scenario") &&
                doc["scenario"].get<std::string>() != name) {
                std::fprintf(stderr,
                             "error: subcommand '%s' conflicts with config scenario '%s'\n",
                             name.c_str(), doc["scenario"].get<std::string>().c_str());
                return kExitConfigError;
            }
            doc["scenario"] = name;
        }

        std::map<std::string, std::string> overrides;
        for (const std::string& pair : set_pairs) {
            const auto eq = pair.find('=');
            if (eq == std::string::npos || eq == 0) {
                std::fprintf(stderr, "error: --set expects key=value, got '%s'\n",
                             pair.c_str());
                return kExitConfigError;
            }
            overrides[pair.substr(0, eq)] = pair.substr(eq + 1);
        }
        faraday::apply_overrides(doc, overrides);
        if (!out_dir.empty()) doc["output_dir"] = out_dir;

        faraday::ScenarioConfig cfg = faraday::parse_config_json(doc);
        cfg.overrides = overrides;
        cfg.strict = strict;
        if (seed_given) cfg.seed = seed;

        const faraday::RunManifest man = faraday::run_scenario(cfg);
        print_summary(man, cfg.output_dir);
        return 0;
    } catch (const faraday::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const faraday::RegimeViolation& e) {
        std::fprintf(stderr, "regime violation: %s\n", e.what());
        return kExitRegimeViolation;
    } catch (const faraday::SimulationError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kExitNumericFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericFailure;
    }
}
