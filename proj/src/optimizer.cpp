#include "sqzsim/optimizer.hpp"

#include <cmath>

namespace sqz {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::kFreeRunning: return "free-running";
        case Scheme::kPassiveOnly: return "passive-only";
        case Scheme::kActiveOnly: return "active-only";
        case Scheme::kPassiveActive: return "passive+active";
        case Scheme::kTheoreticalLimit: return "theoretical-limit";
    }
    return "?";
}

double scheme_tn_abs(const SchemeConfig& cfg, Scheme scheme) {
    const double f = cfg.eval_freq_hz;
    double input = db_to_lin(cfg.laser.free_running_dbhz);
    if (cfg.laser.flicker_corner_hz > 0) input *= 1.0 + cfg.laser.flicker_corner_hz / f;
    switch (scheme) {
        case Scheme::kFreeRunning:
            return input;
        case Scheme::kPassiveOnly:
            return input * db_to_lin(-passive_suppression_db(cfg.passive, f));
        case Scheme::kActiveOnly:
            return closed_loop_at(input, cfg.loop, cfg.v_v, cfg.laser.wavelength_m, f);
        case Scheme::kPassiveActive: {
            const double passive = input * db_to_lin(-passive_suppression_db(cfg.passive, f));
            return closed_loop_at(passive, cfg.loop, cfg.v_v, cfg.laser.wavelength_m, f);
        }
        case Scheme::kTheoreticalLimit: {
            LoopParams limit = cfg.loop;
            limit.inloop_power_w = cfg.limit_inloop_power_w;
            const double passive = input * db_to_lin(-passive_suppression_db(cfg.passive, f));
            return closed_loop_at(passive, limit, cfg.v_v, cfg.laser.wavelength_m, f);
        }
    }
    throw std::domain_error("scheme_tn_abs: unknown scheme");
}

double evaluate_squeezing_db(const SchemeConfig& cfg, Scheme scheme, double power_w) {
    if (!(power_w > 0)) throw std::domain_error("evaluate_squeezing_db: power must be > 0");
    const double tn = scheme_tn_abs(cfg, scheme);
    const double rsn_ool = rsn(power_w, cfg.laser.wavelength_m);
    return -lin_to_db(combine_bs_at(cfg.v_v, cfg.loop.reflectivity, tn / rsn_ool, cfg.bs_model));
}

std::vector<DesignPoint> sweep_power(const SchemeConfig& cfg, Scheme scheme,
                                     std::span<const double> powers_w) {
    std::vector<DesignPoint> out;
    out.reserve(powers_w.size());
    for (double p : powers_w) {
        out.push_back({p, evaluate_squeezing_db(cfg, scheme, p), scheme});
    }
    return out;
}

std::vector<double> default_power_sweep(int points) {
    std::vector<double> out(points);
    const double lo = std::log10(10e-6);
    const double hi = std::log10(100e-3);
    for (int i = 0; i < points; ++i) {
        out[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / (points - 1));
    }
    return out;
}

double max_power_at_target(const SchemeConfig& cfg, Scheme scheme, double target_squeezing_db) {
    const double target_var = db_to_lin(-target_squeezing_db);
    const double r = cfg.loop.reflectivity;
    const double quantum_term = cfg.bs_model == BsModel::kEq1
                                    ? cfg.v_v / r
                                    : r * cfg.v_v + (1.0 - r);
    if (!(target_var > quantum_term)) {
        throw InfeasibleError("max_power_at_target: quantum term alone exceeds the target");
    }
    const double tn = scheme_tn_abs(cfg, scheme);
    const double two_h_nu = rsn(1.0, cfg.laser.wavelength_m); // RSN at 1 W = 2 h nu
    // TN/RSN = tn * P / (2 h nu); affine in P for both combiner modes.
    return (target_var - quantum_term) * two_h_nu / tn;
}

std::vector<std::pair<double, double>> rsn_vs_power(std::span<const double> powers_w,
                                                    double wavelength_m) {
    std::vector<std::pair<double, double>> out;
    out.reserve(powers_w.size());
    for (double p : powers_w) out.emplace_back(p, lin_to_db(rsn(p, wavelength_m)));
    return out;
}

double required_inloop_power(double target_dbhz, double wavelength_m) {
    if (!(target_dbhz < 0)) throw std::domain_error("required_inloop_power: target must be < 0 dB/Hz");
    return rsn(1.0, wavelength_m) / db_to_lin(target_dbhz);
}

} // namespace sqz
