#pragma once

// Scenario orchestration: config parsing/validation, reproduction presets,
// and trace assembly for the CLI.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqzsim/budget.hpp"
#include "sqzsim/chain.hpp"
#include "sqzsim/optimizer.hpp"
#include "sqzsim/squeezer.hpp"

namespace sqz {

struct GridSpec {
    double f_min_hz = 1e3;
    double f_max_hz = 1e6;
    int points_per_decade = 100;

    FrequencyGrid build() const { return FrequencyGrid::logspace(f_min_hz, f_max_hz, points_per_decade); }
};

// Low-frequency excess above the shot-noise reference from SHG cavity
// detuning; disabled unless configured.
struct ShgExcess {
    double level_dbhz = -160.0;
    double corner_hz = 10e3;
};

struct ScenarioConfig {
    std::string preset; // empty for hand-written configs
    GridSpec grid;
    LaserParams laser;
    std::optional<PassiveStageParams> passive;
    std::optional<LoopParams> loop;
    bool free_running_mode = false; // explicit no-stabilization scenario
    // Squeezer: either the effective squeezing at the combiner in dB, or the
    // full OPO parameter set.
    std::optional<double> effective_squeezing_db;
    std::optional<SqueezerParams> squeezer;
    double eval_freq_hz = 50e3;
    bool exact_bs = false;
    bool gaussian_jitter = false;
    std::optional<ShgExcess> shg_excess;

    // Squeezed-vacuum variance over a grid, from whichever squeezer spec is
    // present (vacuum if neither).
    QuadratureVariance vacuum_variance(const FrequencyGrid& g) const;
};

struct TraceSet {
    struct Column {
        std::string label;
        std::string unit; // "dbhz" or "db_rel_snl" or "db"
        std::vector<double> values;
    };

    std::string preset;
    std::string x_label; // "frequency_hz" or "power_w"
    std::vector<double> x;
    std::vector<Column> columns;
    nlohmann::json resolved_config;

    // Budget-table presets carry a table instead of curves.
    bool has_budget = false;
    std::vector<std::pair<std::string, double>> budget_items;
    double budget_total_db = 0.0;
    std::string budget_unit;

    const Column& column(const std::string& label) const;
};

// Known preset names: fig1b, fig2a, fig2b, fig4, fig5, table1, table2.
std::vector<std::string> preset_names();
ScenarioConfig preset_config(const std::string& name);

ScenarioConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& cfg);
void validate(const ScenarioConfig& cfg); // throws ValidationError listing offending fields

TraceSet run_scenario(const ScenarioConfig& cfg);

// Scheme-sweep configuration implied by a scenario (used by fig2b and the
// optimize subcommand).
SchemeConfig scheme_config(const ScenarioConfig& cfg);

} // namespace sqz
