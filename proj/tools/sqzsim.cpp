// Command-line front end: scenario simulation, budget tables, design
// optimization, and Monte Carlo verification of the closed-loop model.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sqzsim/emit.hpp"
#include "sqzsim/scenario.hpp"
#include "sqzsim/timedomain.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 4;
constexpr int kExitIo = 5;

sqz::ScenarioConfig load_config(const std::string& preset, const std::string& config_path) {
    if (!preset.empty()) return sqz::preset_config(preset);
    if (config_path.empty()) {
        throw sqz::ValidationError("either --preset or --config is required");
    }
    std::ifstream in(config_path);
    if (!in) throw sqz::IoError("cannot read config file: " + config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw sqz::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return sqz::parse_config(j);
}

std::string preset_help() {
    std::string s = "paper-reproduction preset, one of:";
    for (const auto& name : sqz::preset_names()) s += " " + name;
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sqzsim - bright squeezed light noise-budget simulator"};
    app.require_subcommand(1);

    std::string preset, config_path, out_dir = ".", formats = "csv,json";
    auto* simulate = app.add_subcommand("simulate", "run a scenario and emit trace files");
    simulate->add_option("--preset", preset, preset_help());
    simulate->add_option("--config", config_path,
                         "JSON scenario config (keys carry explicit units, e.g. power_mw, "
                         "noise_dbhz; see README for the schema)");
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--format", formats, "comma-separated list of csv,json,svg");

    std::string budget_preset, budget_config;
    auto* budget = app.add_subcommand("budget", "print a loss/phase or technical-noise budget");
    budget->add_option("--preset", budget_preset, "table1 or table2");
    budget->add_option("--config", budget_config, "JSON scenario config for a custom budget");

    double target_db = 0.0;
    std::string scheme_str = "passive+active";
    std::string opt_preset = "fig2b", opt_config;
    auto* optimize = app.add_subcommand("optimize", "maximum power reaching a target squeezing");
    optimize->add_option("--target-squeezing-db", target_db, "target squeezing in dB")->required();
    optimize->add_option("--scheme", scheme_str,
                         "free-running | passive-only | active-only | passive+active | "
                         "theoretical-limit");
    optimize->add_option("--preset", opt_preset, preset_help());
    optimize->add_option("--config", opt_config, "JSON scenario config");

    std::uint64_t seed = 0;
    int reps = 1;
    auto* verify = app.add_subcommand("verify", "time-domain Monte Carlo check of the loop model");
    verify->add_option("--seed", seed, "RNG seed (default 0)");
    verify->add_option("--reps", reps, "number of repetitions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            const auto cfg = load_config(preset, config_path);
            const auto traces = sqz::run_scenario(cfg);
            std::stringstream fmts(formats);
            std::string fmt;
            while (std::getline(fmts, fmt, ',')) {
                const auto path = sqz::emit(traces, sqz::parse_format(fmt), out_dir);
                std::cout << "wrote " << path.string() << "\n";
            }
            return kExitOk;
        }
        if (budget->parsed()) {
            const auto cfg = load_config(budget_preset.empty() ? "" : budget_preset, budget_config);
            auto use = cfg;
            if (use.preset != "table1" && use.preset != "table2") use.preset = "table2";
            const auto traces = sqz::run_scenario(use);
            std::printf("%-55s %10s\n", "item", ("value [" + traces.budget_unit + "]").c_str());
            for (const auto& [label, v] : traces.budget_items) {
                std::printf("%-55s %10.2f\n", label.c_str(), v);
            }
            return kExitOk;
        }
        if (optimize->parsed()) {
            const auto cfg = load_config(opt_config.empty() ? opt_preset : "", opt_config);
            const auto sc = sqz::scheme_config(cfg);
            sqz::Scheme scheme = sqz::Scheme::kPassiveActive;
            bool found = false;
            for (auto s : {sqz::Scheme::kFreeRunning, sqz::Scheme::kPassiveOnly,
                           sqz::Scheme::kActiveOnly, sqz::Scheme::kPassiveActive,
                           sqz::Scheme::kTheoreticalLimit}) {
                if (scheme_str == sqz::scheme_name(s)) {
                    scheme = s;
                    found = true;
                }
            }
            if (!found) throw sqz::ValidationError("unknown scheme: " + scheme_str);
            const double p = sqz::max_power_at_target(sc, scheme, target_db);
            std::printf("scheme=%s target=%.2f dB -> max output power %.6g mW\n",
                        sqz::scheme_name(scheme), target_db, p * 1e3);
            std::printf("squeezing at that power: %.4f dB at %.3g Hz\n",
                        sqz::evaluate_squeezing_db(sc, scheme, p), sc.eval_freq_hz);
            return kExitOk;
        }
        if (verify->parsed()) {
            sqz::LoopParams loop; // paper-default loop
            sqz::VerifyReport report;
            try {
                report = sqz::verify_oracle(loop, -125.0, seed, reps);
            } catch (const sqz::InstabilityError& e) {
                std::cerr << "FAIL: loop diverged during verification: " << e.what() << "\n";
                return kExitVerifyFailed;
            }
            for (const auto& band : report.bands) {
                std::printf("%s  %8.3g Hz - %8.3g Hz  max deviation %.3f dB\n",
                            band.pass ? "PASS" : "FAIL", band.f_lo_hz, band.f_hi_hz,
                            band.max_dev_db);
            }
            std::printf("%s  overall max deviation %.3f dB (seed %llu, %d reps)\n",
                        report.pass ? "PASS" : "FAIL", report.max_dev_db,
                        static_cast<unsigned long long>(seed), report.repetitions);
            return report.pass ? kExitOk : kExitVerifyFailed;
        }
    } catch (const sqz::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const sqz::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const sqz::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
