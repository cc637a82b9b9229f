#include "sqzsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sqz {

using nlohmann::json;

QuadratureVariance ScenarioConfig::vacuum_variance(const FrequencyGrid& g) const {
    if (effective_squeezing_db) {
        return QuadratureVariance::from_squeezing_db(g, *effective_squeezing_db);
    }
    if (squeezer) {
        const auto model = gaussian_jitter ? JitterModel::kGaussianAverage : JitterModel::kDeterministic;
        return apply_phase_jitter(opo_variance(*squeezer, g), squeezer->phase_jitter_rad, model);
    }
    return QuadratureVariance::vacuum(g);
}

const TraceSet::Column& TraceSet::column(const std::string& label) const {
    for (const auto& c : columns) {
        if (c.label == label) return c;
    }
    throw std::out_of_range("TraceSet: no column named " + label);
}

std::vector<std::string> preset_names() {
    return {"fig1b", "fig2a", "fig2b", "fig4", "fig5", "table1", "table2"};
}

namespace {

LoopParams paper_loop() {
    LoopParams loop;
    loop.dc_gain_db = 80.0;
    loop.unity_gain_freq_hz = 2e6;
    loop.delay_s = 50e-9;
    loop.reflectivity = 0.99;
    loop.inloop_power_w = 10e-3;
    loop.electronic_noise_dbhz = -168.0;
    // Low-frequency PI boost on top of the plain integrator; needed to hold
    // the loop at the in-loop shot-noise floor through 10 kHz and to keep
    // useful suppression at 1 MHz.
    loop.boost_corner_hz = 1e6;
    return loop;
}

PassiveStageParams paper_passive() { return {32.0, 1e3, 1e6}; }

ScenarioConfig paper_base(double power_out_w) {
    ScenarioConfig cfg;
    cfg.laser.wavelength_m = 1550e-9;
    cfg.laser.power_out_w = power_out_w;
    cfg.laser.free_running_dbhz = -125.0;
    cfg.passive = paper_passive();
    cfg.loop = paper_loop();
    cfg.effective_squeezing_db = 8.6;
    return cfg;
}

} // namespace

ScenarioConfig preset_config(const std::string& name) {
    if (name == "fig1b") {
        ScenarioConfig cfg = paper_base(100e-6);
        cfg.preset = name;
        return cfg;
    }
    if (name == "fig2a") {
        ScenarioConfig cfg = paper_base(100e-6);
        cfg.preset = name;
        return cfg;
    }
    if (name == "fig2b") {
        ScenarioConfig cfg = paper_base(1e-3);
        cfg.preset = name;
        cfg.eval_freq_hz = 1e6;
        return cfg;
    }
    if (name == "fig4") {
        ScenarioConfig cfg = paper_base(100e-6);
        cfg.preset = name;
        cfg.loop.reset();
        return cfg;
    }
    if (name == "fig5") {
        ScenarioConfig cfg = paper_base(1e-3);
        cfg.preset = name;
        return cfg;
    }
    if (name == "table1" || name == "table2") {
        ScenarioConfig cfg = paper_base(name == "table1" ? 100e-6 : 1e-3);
        cfg.preset = name;
        return cfg;
    }
    throw ValidationError("unknown preset: " + name);
}

void validate(const ScenarioConfig& cfg) {
    std::vector<std::string> bad;
    auto check = [&bad](bool ok, const char* field) {
        if (!ok) bad.emplace_back(field);
    };
    check(cfg.grid.f_min_hz > 0 && cfg.grid.f_max_hz > cfg.grid.f_min_hz, "grid.f_min_hz/f_max_hz");
    check(cfg.grid.points_per_decade >= 1, "grid.points_per_decade");
    check(cfg.laser.wavelength_m > 0, "laser.wavelength_nm");
    check(cfg.laser.power_out_w > 0, "laser.power_out_mw");
    check(std::isfinite(cfg.laser.free_running_dbhz), "laser.free_running_dbhz");
    check(cfg.laser.flicker_corner_hz >= 0, "laser.flicker_corner_hz");
    if (cfg.passive) {
        check(cfg.passive->suppression_db >= 0, "passive.suppression_db");
        check(cfg.passive->band_low_hz < cfg.passive->band_high_hz, "passive.band_low_hz/band_high_hz");
    }
    if (cfg.loop) {
        check(cfg.loop->unity_gain_freq_hz > 0, "loop.unity_gain_freq_hz");
        check(cfg.loop->delay_s >= 0, "loop.delay_ns");
        check(cfg.loop->reflectivity > 0 && cfg.loop->reflectivity <= 1, "loop.reflectivity");
        check(cfg.loop->inloop_power_w > 0, "loop.inloop_power_mw");
        check(cfg.loop->boost_corner_hz >= 0, "loop.boost_corner_hz");
    }
    if (cfg.squeezer) {
        check(cfg.squeezer->pump_ratio >= 0 && cfg.squeezer->pump_ratio < 1, "squeezer.pump_ratio");
        check(cfg.squeezer->cavity_hwhm_hz > 0, "squeezer.cavity_hwhm_hz");
        check(cfg.squeezer->total_efficiency > 0 && cfg.squeezer->total_efficiency <= 1,
              "squeezer.total_efficiency");
        check(cfg.squeezer->phase_jitter_rad >= 0, "squeezer.phase_jitter_mrad");
    }
    check(cfg.eval_freq_hz > 0, "eval_freq_hz");
    if (!cfg.free_running_mode && !cfg.passive && !cfg.loop) {
        bad.emplace_back("need at least one stabilization stage or free_running=true");
    }
    if (!bad.empty()) {
        std::string msg = "invalid scenario config:";
        for (const auto& f : bad) msg += " " + f + ";";
        throw ValidationError(msg);
    }
}

ScenarioConfig parse_config(const json& j) {
    static const std::set<std::string> known = {"preset",   "grid",       "laser", "passive",
                                               "loop",     "squeezer",   "modes", "shg_excess",
                                               "eval_freq_hz", "free_running"};
    std::vector<std::string> bad;
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) bad.push_back(key);
    }
    if (!bad.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : bad) msg += " " + k;
        throw ValidationError(msg);
    }
    ScenarioConfig cfg;
    if (j.contains("preset")) cfg = preset_config(j.at("preset").get<std::string>());
    try {
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            cfg.grid.f_min_hz = g.value("f_min_hz", cfg.grid.f_min_hz);
            cfg.grid.f_max_hz = g.value("f_max_hz", cfg.grid.f_max_hz);
            cfg.grid.points_per_decade = g.value("points_per_decade", cfg.grid.points_per_decade);
        }
        if (j.contains("laser")) {
            const auto& l = j.at("laser");
            if (l.contains("wavelength_nm")) cfg.laser.wavelength_m = l.at("wavelength_nm").get<double>() * 1e-9;
            if (l.contains("power_out_mw")) cfg.laser.power_out_w = l.at("power_out_mw").get<double>() * 1e-3;
            cfg.laser.free_running_dbhz = l.value("free_running_dbhz", cfg.laser.free_running_dbhz);
            cfg.laser.flicker_corner_hz = l.value("flicker_corner_hz", cfg.laser.flicker_corner_hz);
        }
        if (j.contains("passive")) {
            PassiveStageParams p = cfg.passive.value_or(PassiveStageParams{});
            const auto& jp = j.at("passive");
            p.suppression_db = jp.value("suppression_db", p.suppression_db);
            p.band_low_hz = jp.value("band_low_hz", p.band_low_hz);
            p.band_high_hz = jp.value("band_high_hz", p.band_high_hz);
            cfg.passive = p;
        }
        if (j.contains("loop")) {
            LoopParams lp = cfg.loop.value_or(LoopParams{});
            const auto& jl = j.at("loop");
            lp.dc_gain_db = jl.value("dc_gain_db", lp.dc_gain_db);
            lp.unity_gain_freq_hz = jl.value("unity_gain_freq_hz", lp.unity_gain_freq_hz);
            if (jl.contains("delay_ns")) lp.delay_s = jl.at("delay_ns").get<double>() * 1e-9;
            lp.reflectivity = jl.value("reflectivity", lp.reflectivity);
            if (jl.contains("inloop_power_mw")) lp.inloop_power_w = jl.at("inloop_power_mw").get<double>() * 1e-3;
            lp.electronic_noise_dbhz = jl.value("electronic_noise_dbhz", lp.electronic_noise_dbhz);
            lp.boost_corner_hz = jl.value("boost_corner_hz", lp.boost_corner_hz);
            cfg.loop = lp;
        }
        if (j.contains("squeezer")) {
            const auto& js = j.at("squeezer");
            if (js.contains("effective_squeezing_db")) {
                cfg.effective_squeezing_db = js.at("effective_squeezing_db").get<double>();
                cfg.squeezer.reset();
            } else {
                SqueezerParams sp = cfg.squeezer.value_or(SqueezerParams{});
                sp.pump_ratio = js.value("pump_ratio", sp.pump_ratio);
                sp.cavity_hwhm_hz = js.value("cavity_hwhm_hz", sp.cavity_hwhm_hz);
                sp.total_efficiency = js.value("total_efficiency", sp.total_efficiency);
                if (js.contains("phase_jitter_mrad")) {
                    sp.phase_jitter_rad = js.at("phase_jitter_mrad").get<double>() * 1e-3;
                }
                cfg.squeezer = sp;
                cfg.effective_squeezing_db.reset();
            }
        }
        if (j.contains("modes")) {
            const auto& m = j.at("modes");
            cfg.exact_bs = m.value("exact_bs", cfg.exact_bs);
            cfg.gaussian_jitter = m.value("gaussian_jitter", cfg.gaussian_jitter);
        }
        if (j.contains("shg_excess")) {
            ShgExcess e;
            e.level_dbhz = j.at("shg_excess").value("level_dbhz", e.level_dbhz);
            e.corner_hz = j.at("shg_excess").value("corner_hz", e.corner_hz);
            cfg.shg_excess = e;
        }
        cfg.eval_freq_hz = j.value("eval_freq_hz", cfg.eval_freq_hz);
        cfg.free_running_mode = j.value("free_running", cfg.free_running_mode);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

json config_to_json(const ScenarioConfig& cfg) {
    json j;
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    j["grid"] = {{"f_min_hz", cfg.grid.f_min_hz},
                 {"f_max_hz", cfg.grid.f_max_hz},
                 {"points_per_decade", cfg.grid.points_per_decade}};
    j["laser"] = {{"wavelength_nm", cfg.laser.wavelength_m * 1e9},
                  {"power_out_mw", cfg.laser.power_out_w * 1e3},
                  {"free_running_dbhz", cfg.laser.free_running_dbhz},
                  {"flicker_corner_hz", cfg.laser.flicker_corner_hz}};
    if (cfg.passive) {
        j["passive"] = {{"suppression_db", cfg.passive->suppression_db},
                        {"band_low_hz", cfg.passive->band_low_hz},
                        {"band_high_hz", cfg.passive->band_high_hz}};
    }
    if (cfg.loop) {
        j["loop"] = {{"dc_gain_db", cfg.loop->dc_gain_db},
                     {"unity_gain_freq_hz", cfg.loop->unity_gain_freq_hz},
                     {"delay_ns", cfg.loop->delay_s * 1e9},
                     {"reflectivity", cfg.loop->reflectivity},
                     {"inloop_power_mw", cfg.loop->inloop_power_w * 1e3},
                     {"electronic_noise_dbhz", cfg.loop->electronic_noise_dbhz},
                     {"boost_corner_hz", cfg.loop->boost_corner_hz}};
    }
    if (cfg.effective_squeezing_db) {
        j["squeezer"] = {{"effective_squeezing_db", *cfg.effective_squeezing_db}};
    } else if (cfg.squeezer) {
        j["squeezer"] = {{"pump_ratio", cfg.squeezer->pump_ratio},
                         {"cavity_hwhm_hz", cfg.squeezer->cavity_hwhm_hz},
                         {"total_efficiency", cfg.squeezer->total_efficiency},
                         {"phase_jitter_mrad", cfg.squeezer->phase_jitter_rad * 1e3}};
    }
    j["modes"] = {{"exact_bs", cfg.exact_bs}, {"gaussian_jitter", cfg.gaussian_jitter}};
    if (cfg.shg_excess) {
        j["shg_excess"] = {{"level_dbhz", cfg.shg_excess->level_dbhz},
                           {"corner_hz", cfg.shg_excess->corner_hz}};
    }
    j["eval_freq_hz"] = cfg.eval_freq_hz;
    j["free_running"] = cfg.free_running_mode;
    return j;
}

SchemeConfig scheme_config(const ScenarioConfig& cfg) {
    SchemeConfig sc;
    sc.laser = cfg.laser;
    sc.passive = cfg.passive.value_or(PassiveStageParams{0.0, 1.0, 1e9});
    sc.loop = cfg.loop.value_or(paper_loop());
    sc.eval_freq_hz = cfg.eval_freq_hz;
    sc.bs_model = cfg.exact_bs ? BsModel::kExactBs : BsModel::kEq1;
    const FrequencyGrid single({cfg.eval_freq_hz});
    sc.v_v = cfg.vacuum_variance(single).squeezed[0];
    return sc;
}

namespace {

TraceSet::Column psd_column(const std::string& label, const NoisePsd& psd) {
    return {label, "dbhz", psd.values_db()};
}

TraceSet::Column flat_column(const std::string& label, std::size_t n, double db) {
    return {label, "dbhz", std::vector<double>(n, db)};
}

// Measured-style technical noise: chain output plus detector electronic
// noise plus optional SHG detuning excess.
std::vector<double> measured_tn(const ScenarioConfig& cfg, const NoisePsd& chain_tn,
                                double electronic_dbhz) {
    std::vector<double> tn(chain_tn.size());
    const double elec = db_to_lin(electronic_dbhz);
    for (std::size_t i = 0; i < chain_tn.size(); ++i) {
        tn[i] = chain_tn[i] + elec;
        if (cfg.shg_excess) {
            const double f = chain_tn.grid()[i];
            tn[i] += db_to_lin(cfg.shg_excess->level_dbhz) /
                     (1.0 + (f / cfg.shg_excess->corner_hz) * (f / cfg.shg_excess->corner_hz));
        }
    }
    return tn;
}

TraceSet run_fig1b(const ScenarioConfig& cfg) {
    TraceSet ts;
    ts.x_label = "power_w";
    // 10 uW - 100 mW, 15 points per decade.
    std::vector<double> powers;
    for (int i = 0; i <= 60; ++i) powers.push_back(std::pow(10.0, -5.0 + i * 4.0 / 60.0));
    ts.x = powers;
    TraceSet::Column rsn_col{"rsn", "dbhz", {}};
    for (const auto& [p, db] : rsn_vs_power(powers, cfg.laser.wavelength_m)) {
        rsn_col.values.push_back(db);
    }
    ts.columns.push_back(std::move(rsn_col));
    return ts;
}

TraceSet run_fig2a(const ScenarioConfig& cfg) {
    const FrequencyGrid grid = cfg.grid.build();
    const auto v_dark = cfg.vacuum_variance(grid);
    const NoisePsd tn_f = free_running_psd(cfg.laser, grid);
    const NoisePsd tn_passive = passive_psd(tn_f, *cfg.passive);
    const LoopParams& loop = *cfg.loop;
    LoopParams limit = loop;
    limit.inloop_power_w = 99e-3;

    TraceSet ts;
    ts.x_label = "frequency_hz";
    ts.x.assign(grid.points().begin(), grid.points().end());
    ts.columns.push_back(psd_column("I_free_running", tn_f));
    ts.columns.push_back(psd_column("II_active_only", closed_loop_psd(tn_f, loop, v_dark, cfg.laser)));
    ts.columns.push_back(psd_column("III_passive_only", tn_passive));
    ts.columns.push_back(
        psd_column("IV_passive_active", closed_loop_psd(tn_passive, loop, v_dark, cfg.laser)));
    ts.columns.push_back(
        psd_column("V_passive_active_99mw", closed_loop_psd(tn_passive, limit, v_dark, cfg.laser)));
    return ts;
}

TraceSet run_fig2b(const ScenarioConfig& cfg) {
    const SchemeConfig sc = scheme_config(cfg);
    const auto powers = default_power_sweep();
    TraceSet ts;
    ts.x_label = "power_w";
    ts.x = powers;
    for (Scheme s : {Scheme::kPassiveOnly, Scheme::kActiveOnly, Scheme::kPassiveActive,
                     Scheme::kTheoreticalLimit}) {
        TraceSet::Column col{scheme_name(s), "db", {}};
        for (const auto& pt : sweep_power(sc, s, powers)) col.values.push_back(pt.squeezing_db);
        ts.columns.push_back(std::move(col));
    }
    return ts;
}

TraceSet run_fig4(const ScenarioConfig& cfg) {
    const FrequencyGrid grid = cfg.grid.build();
    const auto v_v = cfg.vacuum_variance(grid);
    const NoisePsd tn_f = free_running_psd(cfg.laser, grid);
    const NoisePsd tn_passive = passive_psd(tn_f, *cfg.passive);
    const double rsn_ool = rsn(cfg.laser.power_out_w, cfg.laser.wavelength_m);
    const double elec_dbhz = cfg.loop ? cfg.loop->electronic_noise_dbhz : -168.0;

    TraceSet ts;
    ts.x_label = "frequency_hz";
    ts.x.assign(grid.points().begin(), grid.points().end());
    ts.columns.push_back(psd_column("a_free_running", tn_f));
    ts.columns.push_back(flat_column("c_snl", grid.size(), lin_to_db(rsn_ool)));
    ts.columns.push_back(psd_column("f_passive_tn", tn_passive));
    ts.columns.push_back(flat_column("g_electronic", grid.size(), elec_dbhz));
    TraceSet::Column vsq{"e_squeezed_vacuum", "db_rel_snl", {}};
    for (double v : v_v.squeezed) vsq.values.push_back(lin_to_db(v));
    ts.columns.push_back(std::move(vsq));
    const auto tn = measured_tn(cfg, tn_passive, elec_dbhz);
    const auto result = combine_bs(v_v, 0.99, NoisePsd(grid, tn), rsn_ool, cfg.laser.power_out_w,
                                   cfg.exact_bs ? BsModel::kExactBs : BsModel::kEq1);
    TraceSet::Column bright{"h_bright_squeezed", "db_rel_snl", {}};
    for (double v : result.variance) bright.values.push_back(lin_to_db(v));
    ts.columns.push_back(std::move(bright));
    return ts;
}

TraceSet run_fig5(const ScenarioConfig& cfg) {
    const FrequencyGrid grid = cfg.grid.build();
    const auto v_v = cfg.vacuum_variance(grid);
    const NoisePsd tn_f = free_running_psd(cfg.laser, grid);
    const NoisePsd tn_passive = passive_psd(tn_f, *cfg.passive);
    const LoopParams& loop = *cfg.loop;
    const NoisePsd tn_loop = closed_loop_psd(tn_passive, loop, v_v, cfg.laser);
    const double rsn_ool = rsn(cfg.laser.power_out_w, cfg.laser.wavelength_m);
    const double rsn_il = rsn_inloop(loop, cfg.laser.wavelength_m);

    TraceSet ts;
    ts.x_label = "frequency_hz";
    ts.x.assign(grid.points().begin(), grid.points().end());
    ts.columns.push_back(psd_column("a_free_running", tn_f));
    ts.columns.push_back(flat_column("c_snl", grid.size(), lin_to_db(rsn_ool)));
    ts.columns.push_back(flat_column("f_inloop_snl", grid.size(), lin_to_db(rsn_il)));
    ts.columns.push_back(flat_column("g_electronic", grid.size(), loop.electronic_noise_dbhz));
    TraceSet::Column resid{"h_residual_tn", "dbhz", {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        resid.values.push_back(lin_to_db(std::max(tn_loop[i] - rsn_il, 1e-30)));
    }
    ts.columns.push_back(std::move(resid));
    TraceSet::Column vsq{"e_squeezed_vacuum", "db_rel_snl", {}};
    for (double v : v_v.squeezed) vsq.values.push_back(lin_to_db(v));
    ts.columns.push_back(std::move(vsq));
    const auto tn = measured_tn(cfg, tn_loop, loop.electronic_noise_dbhz);
    const auto result = combine_bs(v_v, loop.reflectivity, NoisePsd(grid, tn), rsn_ool,
                                   cfg.laser.power_out_w,
                                   cfg.exact_bs ? BsModel::kExactBs : BsModel::kEq1);
    TraceSet::Column bright{"i_bright_squeezed", "db_rel_snl", {}};
    for (double v : result.variance) bright.values.push_back(lin_to_db(v));
    ts.columns.push_back(std::move(bright));
    return ts;
}

TraceSet run_table1() {
    TraceSet ts;
    ts.has_budget = true;
    ts.budget_unit = "pct/mrad";
    const std::vector<std::pair<std::string, double>> losses = {
        {"OPO escape efficiency (pct)", 3.0},
        {"interference efficiency (pct)", 2.8},
        {"photodiode quantum efficiency (pct)", 1.0},
        {"propagation efficiency (pct)", 3.2},
    };
    const std::vector<std::pair<std::string, double>> phases = {
        {"OPO phase (mrad)", 2.0},
        {"squeezed/frequency-shifted relative phase (mrad)", 8.0},
        {"squeezed/local relative phase (mrad)", 11.0},
    };
    std::vector<double> loss_vals;
    std::vector<double> phase_vals;
    for (const auto& [label, v] : losses) {
        ts.budget_items.emplace_back(label, v);
        loss_vals.push_back(v);
    }
    ts.budget_items.emplace_back("total loss, multiplicative (pct)", compose_loss(loss_vals));
    ts.budget_items.emplace_back("total loss, linear (pct)",
                                 compose_loss(loss_vals, LossRule::kLinearSum));
    for (const auto& [label, v] : phases) {
        ts.budget_items.emplace_back(label, v);
        phase_vals.push_back(v);
    }
    ts.budget_items.emplace_back("total phase, linear (mrad)", compose_phase(phase_vals));
    ts.budget_items.emplace_back("total phase, quadrature (mrad)",
                                 compose_phase(phase_vals, PhaseRule::kQuadratureSum));
    return ts;
}

TraceSet run_table2(const ScenarioConfig& cfg) {
    TraceSet ts;
    ts.has_budget = true;
    ts.budget_unit = "db_rel_snl";

    BudgetConfig passive_cfg;
    passive_cfg.laser = cfg.laser;
    passive_cfg.laser.power_out_w = 100e-6;
    passive_cfg.passive = cfg.passive.value_or(paper_passive());
    passive_cfg.loop = cfg.loop.value_or(paper_loop());
    passive_cfg.active_enabled = false;
    const NoiseBudget passive = budget_report(passive_cfg);

    BudgetConfig active_cfg = passive_cfg;
    active_cfg.laser.power_out_w = 1e-3;
    active_cfg.active_enabled = true;
    const FrequencyGrid single({active_cfg.reference_freq_hz});
    active_cfg.v_darkport = cfg.vacuum_variance(single).squeezed[0];
    const NoiseBudget multiple = budget_report(active_cfg);

    for (const auto& [label, v] : passive.items) ts.budget_items.emplace_back("passive: " + label, v);
    ts.budget_items.emplace_back("passive: total", passive.total_db);
    for (const auto& [label, v] : multiple.items) {
        ts.budget_items.emplace_back("passive&active: " + label, v);
    }
    ts.budget_items.emplace_back("passive&active: total", multiple.total_db);
    ts.budget_total_db = multiple.total_db;
    return ts;
}

TraceSet run_generic(const ScenarioConfig& cfg) {
    const FrequencyGrid grid = cfg.grid.build();
    const auto v_v = cfg.vacuum_variance(grid);
    const NoisePsd tn_f = free_running_psd(cfg.laser, grid);
    const double rsn_ool = rsn(cfg.laser.power_out_w, cfg.laser.wavelength_m);

    TraceSet ts;
    ts.x_label = "frequency_hz";
    ts.x.assign(grid.points().begin(), grid.points().end());
    ts.columns.push_back(psd_column("free_running", tn_f));
    ts.columns.push_back(flat_column("snl", grid.size(), lin_to_db(rsn_ool)));

    NoisePsd tn_chain = tn_f;
    if (cfg.passive) {
        tn_chain = passive_psd(tn_chain, *cfg.passive);
        ts.columns.push_back(psd_column("passive_tn", tn_chain));
    }
    double elec_dbhz = -168.0;
    double r = 0.99;
    if (cfg.loop) {
        tn_chain = closed_loop_psd(tn_chain, *cfg.loop, v_v, cfg.laser);
        ts.columns.push_back(psd_column("closed_loop_tn", tn_chain));
        elec_dbhz = cfg.loop->electronic_noise_dbhz;
        r = cfg.loop->reflectivity;
    }
    ts.columns.push_back(flat_column("electronic", grid.size(), elec_dbhz));

    if (cfg.effective_squeezing_db || cfg.squeezer) {
        TraceSet::Column vsq{"squeezed_vacuum", "db_rel_snl", {}};
        for (double v : v_v.squeezed) vsq.values.push_back(lin_to_db(v));
        ts.columns.push_back(std::move(vsq));
        const auto tn = measured_tn(cfg, tn_chain, elec_dbhz);
        const auto result = combine_bs(v_v, r, NoisePsd(grid, tn), rsn_ool, cfg.laser.power_out_w,
                                       cfg.exact_bs ? BsModel::kExactBs : BsModel::kEq1);
        TraceSet::Column bright{"bright_squeezed", "db_rel_snl", {}};
        for (double v : result.variance) bright.values.push_back(lin_to_db(v));
        ts.columns.push_back(std::move(bright));
    }
    return ts;
}

} // namespace

TraceSet run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    TraceSet ts;
    if (cfg.preset == "fig1b") {
        ts = run_fig1b(cfg);
    } else if (cfg.preset == "fig2a") {
        ts = run_fig2a(cfg);
    } else if (cfg.preset == "fig2b") {
        ts = run_fig2b(cfg);
    } else if (cfg.preset == "fig4") {
        ts = run_fig4(cfg);
    } else if (cfg.preset == "fig5") {
        ts = run_fig5(cfg);
    } else if (cfg.preset == "table1") {
        ts = run_table1();
    } else if (cfg.preset == "table2") {
        ts = run_table2(cfg);
    } else {
        ts = run_generic(cfg);
    }
    ts.preset = cfg.preset;
    ts.resolved_config = config_to_json(cfg);
    return ts;
}

} // namespace sqz
