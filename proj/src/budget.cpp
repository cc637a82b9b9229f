#include "sqzsim/budget.hpp"

#include <cmath>

namespace sqz {

double compose_loss(std::span<const double> items_pct, LossRule rule) {
    double transmitted = 1.0;
    double linear = 0.0;
    for (double l : items_pct) {
        if (!(l >= 0) || l >= 100.0) {
            throw std::domain_error("compose_loss: each item must be in [0, 100)");
        }
        transmitted *= 1.0 - l / 100.0;
        linear += l;
    }
    return rule == LossRule::kMultiplicative ? 100.0 * (1.0 - transmitted) : linear;
}

double compose_phase(std::span<const double> items_mrad, PhaseRule rule) {
    double linear = 0.0;
    double quad = 0.0;
    for (double t : items_mrad) {
        if (!(t >= 0)) throw std::domain_error("compose_phase: items must be >= 0");
        linear += t;
        quad += t * t;
    }
    return rule == PhaseRule::kLinearSum ? linear : std::sqrt(quad);
}

double technical_noise_total(std::span<const double> items_db) {
    return incoherent_sum_db(items_db);
}

NoiseBudget budget_report(const BudgetConfig& cfg) {
    const double f = cfg.reference_freq_hz;
    const double rsn_ool_db = lin_to_db(rsn(cfg.laser.power_out_w, cfg.laser.wavelength_m));

    NoiseBudget out;
    auto push = [&out](const std::string& label, double level_db) {
        if (std::isfinite(level_db)) out.items.emplace_back(label, level_db);
    };

    // Stabilized amplitude noise of the delivered beam.
    double amplitude_db;
    double input_floor_lin = db_to_lin(cfg.laser.free_running_dbhz);
    if (cfg.laser.flicker_corner_hz > 0) input_floor_lin *= 1.0 + cfg.laser.flicker_corner_hz / f;
    if (cfg.passive_enabled) {
        if (f < cfg.passive.band_low_hz || f > cfg.passive.band_high_hz) {
            throw std::domain_error("budget_report: reference frequency outside the passive band");
        }
        input_floor_lin *= db_to_lin(-passive_suppression_db(cfg.passive, f));
    }
    if (cfg.active_enabled) {
        amplitude_db = lin_to_db(rsn_inloop(cfg.loop, cfg.laser.wavelength_m)) - rsn_ool_db;
        push("in-loop quantum noise", amplitude_db);
        const double residual = input_floor_lin / loop_suppression(cfg.loop, f);
        if (residual > 0) push("residual in-loop noise", lin_to_db(residual) - rsn_ool_db);
    } else if (input_floor_lin > 0) {
        push("stabilized amplitude noise", lin_to_db(input_floor_lin) - rsn_ool_db);
    }

    push("electronic noise", cfg.loop.electronic_noise_dbhz - rsn_ool_db);

    if (out.items.empty()) {
        throw std::domain_error("budget_report: no nonzero noise contributions");
    }
    std::vector<double> levels;
    levels.reserve(out.items.size());
    for (const auto& [label, db] : out.items) levels.push_back(db);
    out.total_db = incoherent_sum_db(levels);
    return out;
}

} // namespace sqz
