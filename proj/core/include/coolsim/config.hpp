// config.hpp — run configuration: JSON ingestion with Fig-2-style defaults,
// detuning resolution, and the resolved-config echo used for reproducible
// report metadata.

#pragma once

#include <string>

#include <json.hpp>

#include "coolsim/analysis.hpp"
#include "coolsim/model.hpp"

namespace coolsim {

inline constexpr const char* kVersion = "1.0.0";

enum class RunMode { Run, Ncl, Scan, QSwitch, OracleCompare };

const char* to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& s);

struct OutputOptions {
    std::string dir{"."};
    std::size_t stride{0};  // 0 = every 0.25 time units
    bool components{true};
};

struct OracleConfig {
    std::size_t K{600};
    double omega_max_factor{40.0};  // omega_max = factor * omega_l
    std::size_t traj_stride{2};
    double tolerance{0.02};
};

struct ScanConfig {
    std::vector<complexd> c1_values{{0.0, 0.0}};
    std::vector<complexd> c2_values{{0.0, 0.0}};
};

struct QSwitchConfig {
    double t_switch{17.15};
    double kappa_hi{1.0};
};

struct RunConfig {
    PhysicalParams params;
    KappaSchedule schedule;
    TimeGrid grid{1e-3, 70000};
    OutputOptions output;
    RunMode mode{RunMode::Run};
    TrajectoryModel trajectory{TrajectoryModel::StationaryEnvelope};
    NuConvention nu_convention{kDefaultNuConvention};
    unsigned workers{0};  // 0 = machine parallelism
    OracleConfig oracle;
    ScanConfig scan;
    QSwitchConfig qswitch;

    // detuning specification: delta_c wins when given, otherwise params.delta_c
    // is resolved from the steady-state fixed point for delta_eff_target
    bool delta_c_given{false};
    double delta_eff_target{1.0};
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// parse a config document; unknown keys are rejected, absent keys default
RunConfig load_config_json(const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);
RunConfig default_config();

// resolve params.delta_c from the target effective detuning (no-op when
// delta_c was given explicitly)
void resolve_detuning(RunConfig& config);

// full resolved-config echo (defaults materialized), stable field order
nlohmann::ordered_json resolved_json(const RunConfig& config);

}  // namespace coolsim
