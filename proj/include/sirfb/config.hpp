#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sirfb/frontfix.hpp"
#include "sirfb/model.hpp"
#include "sirfb/solver.hpp"

namespace sirfb {

/// Initial-profile descriptor: a constant level, the bump shape
/// a*(1-(r/h0)^2), or tabulated values on a uniform grid over the
/// profile's domain.
struct ProfileSpec {
    enum class Kind { Constant, Bump, Table };
    Kind kind = Kind::Bump;
    double value = 0.0;         ///< constant level or bump amplitude
    std::vector<double> table;  ///< uniform samples (Table only)
};

/// Everything a scenario needs, parsed from the flat `section.key = value`
/// config format.
struct ScenarioConfig {
    ModelParams params{};
    double h0 = 0;
    ProfileSpec s0{ProfileSpec::Kind::Constant, 1.0, {}};
    ProfileSpec i0{ProfileSpec::Kind::Bump, 0.0, {}};
    ProfileSpec r0{ProfileSpec::Kind::Bump, 0.0, {}};
    double L = 0;
    int N_L = 0;
    int N_h = 0;
    TimeStepConfig ts{};
    std::string series_path;
    std::string profiles_dir;
    std::string svg_path;

    /// Cross-field validation (domain-type invariants plus geometry).
    /// Throws ConfigError with a field-precise message.
    void validate() const;
};

/// Parses the flat key schema; unknown keys and malformed lines raise
/// ConfigError naming the offender.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

/// Serializes so that re-parsing yields an identical scenario
/// (numbers emitted with 17 significant digits).
std::string dump_config(const ScenarioConfig& cfg);

InitialData build_initial_data(const ScenarioConfig& cfg);
GridSpec build_grid(const ScenarioConfig& cfg);

} // namespace sirfb
