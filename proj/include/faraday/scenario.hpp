#ifndef FARADAY_SCENARIO_HPP
#define FARADAY_SCENARIO_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "faraday/analytic.hpp"
#include "faraday/doppler.hpp"
#include "faraday/evolution.hpp"
#include "faraday/observables.hpp"
#include "faraday/params.hpp"

namespace faraday {

inline constexpr const char* kToolName = "faraday";
inline constexpr const char* kToolVersion = "1.0.0";

/// Fits and comparisons against the numeric trajectories start here, past the
/// O(e^{-gamma t}) transient (units of 1/Gamma).
inline constexpr double kFitWindowStart = 30.0;

enum class ScenarioKind { fig2, rotation, sweep_b, cross_mod, regime_check };
enum class UnitSystem { gamma_units, si };

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& name);

/// Parsed, validated, fully defaulted run description.
struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::fig2;
    UnitSystem units = UnitSystem::gamma_units;
    SystemParams system;  ///< in the configured unit system
    std::optional<ZeemanParams> zeeman;
    std::optional<MediumParams> medium;
    TimeGrid grid{0.0, 400.0, 4000};
    DopplerConfig doppler;
    double rel_tol = kDefaultRelTol;
    double abs_tol = kDefaultAbsTol;

    // fig2
    std::vector<double> fig2_deltas{0.0, 0.03, 0.1};
    bool fig2_asymmetric = true;
    double fig2_asymmetric_delta = 0.03;

    // sweep_b
    std::vector<double> sweep_deltas{0.02, 0.04, 0.06, 0.08, 0.1};

    // cross_mod
    double cross_omega2_sq = 0.09;
    std::vector<double> cross_omega2_sq_values{0.0, 0.03, 0.06, 0.09, 0.12, 0.18};

    // rotation
    int n_slices = 256;

    std::string output_dir = "out";
    std::map<std::string, std::string> overrides;  ///< applied --set pairs
    std::optional<long> seed;                      ///< reserved, dynamics deterministic
    bool strict = false;

    /// System parameters rescaled for integration (identity in gamma-units).
    SystemParams system_gamma_units() const;
    /// Grid rescaled to 1/Gamma time units (identity in gamma-units).
    TimeGrid grid_gamma_units() const;
};

/// Strict-schema parse: unknown keys are rejected with their path, missing
/// required fields raise SchemaError, mixed unit systems raise UnitError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_json(const nlohmann::json& doc);

/// Dotted-path overrides ("system.delta=0.05") applied onto a raw document
/// before parsing. Values are parsed as JSON literals, falling back to string.
void apply_overrides(nlohmann::json& doc,
                     const std::map<std::string, std::string>& overrides);

/// Self-contained record of one run; resolved_config replays it exactly.
struct RunManifest {
    std::string tool_name;
    std::string tool_version;
    std::string config_hash;
    nlohmann::json resolved_config;
    RegimeReport regime;
    nlohmann::json derived;  ///< scenario-specific derived quantities
    double timing_seconds = 0.0;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

/// Round-trippable document equivalent to the parsed config.
nlohmann::json resolved_config_json(const ScenarioConfig& cfg);

/// FNV-1a 64-bit hash of the canonical config document, hex-encoded.
std::string config_hash(const nlohmann::json& resolved);

/// Executes the configured scenario, writes its CSV outputs and
/// manifest.json under cfg.output_dir, and returns the manifest.
/// Throws RegimeViolation in strict mode when a regime flag fails.
RunManifest run_scenario(const ScenarioConfig& cfg);

/// CSV with a header row, 17 significant digits, LF line endings and the
/// given column order. Throws LengthMismatch for unequal or empty columns
/// and IoError when the file cannot be written.
void write_series(const std::string& path,
                  const std::vector<std::pair<std::string, std::vector<double>>>& columns);

}  // namespace faraday

#endif
