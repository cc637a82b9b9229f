#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sqzsim/emit.hpp"
#include "sqzsim/scenario.hpp"

using namespace sqz;
using nlohmann::json;

namespace {
bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Index of the grid point closest to f on the preset 100-points-per-decade
// grid starting at 1 kHz.
std::size_t grid_index(double f_hz) {
    return static_cast<std::size_t>(std::lround(100.0 * std::log10(f_hz / 1e3)));
}
} // namespace

TEST_CASE("preset catalogue") {
    auto names = preset_names();
    REQUIRE(names.size() == 7);
    for (const auto& n : names) {
        auto cfg = preset_config(n);
        CHECK(cfg.preset == n);
        CHECK_NOTHROW(validate(cfg));
    }
    CHECK_THROWS_AS(preset_config("fig99"), ValidationError);
}

TEST_CASE("shot-noise sweep preset") {
    auto ts = run_scenario(preset_config("fig1b"));
    CHECK(ts.x_label == "power_w");
    REQUIRE(ts.x.size() == 61);
    CHECK(near(ts.x.front(), 10e-6, 1e-12));
    CHECK(near(ts.x.back(), 100e-3, 1e-9));
    const auto& rsn_col = ts.column("rsn");
    CHECK(near(rsn_col.values[30], -155.91, 5e-3)); // 1 mW
    for (std::size_t i = 1; i < rsn_col.values.size(); ++i) {
        CHECK(rsn_col.values[i] < rsn_col.values[i - 1]); // falls as power rises
    }
}

TEST_CASE("stabilization-scheme spectra preset") {
    auto ts = run_scenario(preset_config("fig2a"));
    CHECK(ts.x_label == "frequency_hz");
    REQUIRE(ts.x.size() == 301);
    REQUIRE(ts.columns.size() == 5);
    const auto& free = ts.column("I_free_running");
    const auto& passive = ts.column("III_passive_only");
    const auto& active = ts.column("II_active_only");
    const auto& both = ts.column("IV_passive_active");
    const auto& limit = ts.column("V_passive_active_99mw");
    const std::size_t i10k = grid_index(1e4);
    CHECK(near(free.values[i10k], -125.0, 1e-6));
    CHECK(near(passive.values[i10k], -157.0, 1e-6));
    CHECK(near(active.values[i10k], -165.91, 1.0));
    CHECK(near(both.values[i10k], -165.91, 0.5));
    CHECK(near(limit.values[i10k], -175.87, 0.5));
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        CHECK(both.values[i] <= active.values[i] + 1e-9);
        CHECK(limit.values[i] <= both.values[i] + 1e-9);
    }
}

TEST_CASE("squeezing-vs-power preset") {
    auto ts = run_scenario(preset_config("fig2b"));
    CHECK(ts.x_label == "power_w");
    REQUIRE(ts.columns.size() == 4);
    REQUIRE(ts.x.size() == 50);
    const auto& pa = ts.column("passive+active");
    const auto& tl = ts.column("theoretical-limit");
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        CHECK(tl.values[i] >= pa.values[i] - 1e-9);
        if (i > 0) CHECK(pa.values[i] <= pa.values[i - 1] + 1e-12);
    }
}

TEST_CASE("passive-scheme noise-budget spectra preset") {
    auto ts = run_scenario(preset_config("fig4"));
    const std::size_t i50k = grid_index(5e4);
    CHECK(near(ts.column("c_snl").values[i50k], -145.91, 5e-3));
    CHECK(near(ts.column("f_passive_tn").values[i50k], -157.0, 1e-6));
    CHECK(near(ts.column("g_electronic").values[i50k], -168.0, 1e-9));
    CHECK(near(ts.column("e_squeezed_vacuum").values[i50k], -8.6, 1e-6));
    // Bright-beam squeezing at 50 kHz lands near the -6.5 dB headline.
    CHECK(near(ts.column("h_bright_squeezed").values[i50k], -6.5, 0.25));
}

TEST_CASE("active-scheme noise-budget spectra preset") {
    auto ts = run_scenario(preset_config("fig5"));
    const std::size_t i50k = grid_index(5e4);
    CHECK(near(ts.column("c_snl").values[i50k], -155.91, 5e-3));
    CHECK(near(ts.column("f_inloop_snl").values[i50k], -165.91, 5e-3));
    const auto& bright = ts.column("i_bright_squeezed");
    CHECK(bright.values[i50k] < -4.5);
    CHECK(bright.values[i50k] > -6.5);
}

TEST_CASE("loss and phase budget preset") {
    auto ts = run_scenario(preset_config("table1"));
    REQUIRE(ts.has_budget);
    auto find = [&ts](const std::string& label) {
        for (const auto& [l, v] : ts.budget_items) {
            if (l == label) return v;
        }
        FAIL(("missing budget item " + label));
        return 0.0;
    };
    CHECK(near(find("total loss, multiplicative (pct)"), 9.6458, 1e-3));
    CHECK(near(find("total loss, linear (pct)"), 10.0, 1e-9));
    CHECK(near(find("total phase, linear (mrad)"), 21.0, 1e-9));
    CHECK(near(find("total phase, quadrature (mrad)"), 13.748, 1e-3));
}

TEST_CASE("technical-noise budget preset") {
    auto ts = run_scenario(preset_config("table2"));
    REQUIRE(ts.has_budget);
    auto find = [&ts](const std::string& label) {
        for (const auto& [l, v] : ts.budget_items) {
            if (l == label) return v;
        }
        FAIL(("missing budget item " + label));
        return 0.0;
    };
    CHECK(near(find("passive: total"), -10.76, 5e-3));
    CHECK(near(find("passive&active: total"), -7.91, 5e-3));
    CHECK(near(ts.budget_total_db, -7.91, 5e-3));
}

TEST_CASE("config parsing applies unit suffixes") {
    json j = {
        {"laser", {{"wavelength_nm", 1064.0}, {"power_out_mw", 2.5}}},
        {"loop", {{"delay_ns", 80.0}, {"inloop_power_mw", 5.0}}},
        {"squeezer", {{"pump_ratio", 0.7}, {"phase_jitter_mrad", 21.0}}},
    };
    auto cfg = parse_config(j);
    CHECK(near(cfg.laser.wavelength_m, 1064e-9, 1e-15));
    CHECK(near(cfg.laser.power_out_w, 2.5e-3, 1e-12));
    REQUIRE(cfg.loop.has_value());
    CHECK(near(cfg.loop->delay_s, 80e-9, 1e-15));
    CHECK(near(cfg.loop->inloop_power_w, 5e-3, 1e-12));
    REQUIRE(cfg.squeezer.has_value());
    CHECK(near(cfg.squeezer->phase_jitter_rad, 0.021, 1e-12));
    CHECK_FALSE(cfg.effective_squeezing_db.has_value());
}

TEST_CASE("config parsing starts from a preset and applies overrides") {
    json j = {{"preset", "fig2a"}, {"laser", {{"power_out_mw", 0.5}}}};
    auto cfg = parse_config(j);
    CHECK(cfg.preset == "fig2a");
    CHECK(near(cfg.laser.power_out_w, 0.5e-3, 1e-12));
    CHECK(cfg.passive.has_value()); // preset stages survive the override
    CHECK(cfg.loop.has_value());
}

TEST_CASE("unknown config keys are rejected by name") {
    json j = {{"preset", "fig2a"}, {"lasre", {{"power_out_mw", 1.0}}}};
    try {
        parse_config(j);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("lasre") != std::string::npos);
    }
}

TEST_CASE("invalid values are reported with their field names") {
    json j = {{"loop", {{"reflectivity", 1.5}, {"inloop_power_mw", -1.0}}}};
    try {
        parse_config(j);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("loop.reflectivity") != std::string::npos);
        CHECK(msg.find("loop.inloop_power_mw") != std::string::npos);
    }
}

TEST_CASE("a config with no stabilization stage needs the free-running flag") {
    CHECK_THROWS_AS(parse_config(json::object()), ValidationError);
    CHECK_NOTHROW(parse_config(json{{"free_running", true}}));
}

TEST_CASE("resolved config survives a json round trip") {
    auto cfg = preset_config("fig5");
    auto back = parse_config(config_to_json(cfg));
    CHECK(back.preset == cfg.preset);
    CHECK(near(back.laser.power_out_w, cfg.laser.power_out_w, 1e-15));
    CHECK(back.effective_squeezing_db == cfg.effective_squeezing_db);
    REQUIRE(back.loop.has_value());
    CHECK(near(back.loop->boost_corner_hz, cfg.loop->boost_corner_hz, 1e-9));
    // nm <-> m conversions may wobble by an ulp; compare numerically.
    CHECK(near(back.laser.wavelength_m / cfg.laser.wavelength_m, 1.0, 1e-12));
    CHECK(near(back.loop->delay_s / cfg.loop->delay_s, 1.0, 1e-12));
}

TEST_CASE("generic scenarios build the chain the config describes") {
    json j = {
        {"free_running", true},
        {"passive", {{"suppression_db", 30.0}}},
        {"squeezer", {{"pump_ratio", 0.7}, {"total_efficiency", 0.9}, {"phase_jitter_mrad", 21.0}}},
    };
    auto ts = run_scenario(parse_config(j));
    CHECK(ts.preset.empty());
    CHECK_NOTHROW(ts.column("free_running"));
    CHECK_NOTHROW(ts.column("passive_tn"));
    CHECK_NOTHROW(ts.column("bright_squeezed"));
    CHECK_THROWS_AS(ts.column("closed_loop_tn"), std::out_of_range);
}

TEST_CASE("effective squeezing and the opo model feed the same interface") {
    ScenarioConfig cfg = preset_config("fig4");
    auto g = FrequencyGrid({5e4});
    CHECK(near(cfg.vacuum_variance(g).squeezed[0], db_to_lin(-8.6), 1e-9));

    cfg.effective_squeezing_db.reset();
    SqueezerParams sp;
    sp.pump_ratio = std::sqrt(0.5);
    sp.total_efficiency = 0.9;
    sp.phase_jitter_rad = 0.021;
    cfg.squeezer = sp;
    CHECK(near(10 * std::log10(cfg.vacuum_variance(g).squeezed[0]), -8.54, 0.01));

    cfg.squeezer.reset();
    CHECK(cfg.vacuum_variance(g).squeezed[0] == 1.0);
}

TEST_CASE("scheme configuration inherits the scenario squeezer") {
    auto sc = scheme_config(preset_config("fig2b"));
    CHECK(near(sc.v_v, db_to_lin(-8.6), 1e-6));
    CHECK(sc.eval_freq_hz == 1e6);
    CHECK(sc.bs_model == BsModel::kEq1);
}

TEST_CASE("csv emission round-trips to six significant digits") {
    auto ts = run_scenario(preset_config("fig2a"));
    auto cols = parse_csv_columns(to_csv(ts));
    REQUIRE(cols.size() == 1 + ts.columns.size());
    REQUIRE(cols[0].size() == ts.x.size());
    for (std::size_t i = 0; i < ts.x.size(); ++i) {
        CHECK(near(cols[0][i] / ts.x[i], 1.0, 1e-6));
        for (std::size_t c = 0; c < ts.columns.size(); ++c) {
            CHECK(near(cols[c + 1][i], ts.columns[c].values[i],
                       std::abs(ts.columns[c].values[i]) * 1e-6 + 1e-9));
        }
    }
}

TEST_CASE("json emission carries the resolved config for provenance") {
    auto ts = run_scenario(preset_config("fig4"));
    auto j = to_json(ts);
    CHECK(j.at("preset") == "fig4");
    CHECK(j.contains("config_hash"));
    CHECK(j.at("config") == ts.resolved_config);
    CHECK(j.at("traces").contains("h_bright_squeezed"));
    auto vals = j.at("traces").at("h_bright_squeezed").at("values").get<std::vector<double>>();
    CHECK(vals.size() == ts.x.size());
}

TEST_CASE("budget presets emit item,value csv") {
    auto csv = to_csv(run_scenario(preset_config("table1")));
    CHECK(csv.find("item,value_pct/mrad") == 0);
    CHECK(csv.find("total loss; multiplicative") != std::string::npos); // commas escaped
}

TEST_CASE("svg emission draws one polyline per trace") {
    auto ts = run_scenario(preset_config("fig2a"));
    auto svg = to_svg(ts);
    CHECK(svg.find("<svg") != std::string::npos);
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
    CHECK(count == ts.columns.size());
}

TEST_CASE("emit writes the derived filename into the output directory") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "sqzsim_emit_test";
    fs::remove_all(dir);
    auto ts = run_scenario(preset_config("fig1b"));
    auto p_csv = emit(ts, EmitFormat::kCsv, dir);
    auto p_json = emit(ts, EmitFormat::kJson, dir);
    CHECK(p_csv.filename() == "fig1b.csv");
    CHECK(p_json.filename() == "fig1b.json");
    CHECK(fs::exists(p_csv));
    CHECK(fs::exists(p_json));
    fs::remove_all(dir);
}

TEST_CASE("format names") {
    CHECK(parse_format("csv") == EmitFormat::kCsv);
    CHECK(parse_format("json") == EmitFormat::kJson);
    CHECK(parse_format("svg") == EmitFormat::kSvg);
    CHECK_THROWS(parse_format("xml"));
}
