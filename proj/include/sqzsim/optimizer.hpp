#pragma once

// Design-space exploration: squeezing vs output power, shot-noise scaling
// with power, and analytic inversions for the power reachable at a target
// squeezing.

#include <vector>

#include "sqzsim/chain.hpp"

namespace sqz {

enum class Scheme { kFreeRunning, kPassiveOnly, kActiveOnly, kPassiveActive, kTheoreticalLimit };

const char* scheme_name(Scheme s);

// Everything needed to evaluate a scheme's technical-noise level at one
// frequency. The output power is swept separately; the technical noise of
// the delivered beam does not depend on it.
struct SchemeConfig {
    LaserParams laser;
    PassiveStageParams passive;
    LoopParams loop;
    double limit_inloop_power_w = 99e-3; // in-loop power of the theoretical limit
    double v_v = 0.138038;               // squeezed-vacuum variance at the combiner (-8.6 dB)
    double eval_freq_hz = 1e6;
    BsModel bs_model = BsModel::kEq1;
};

struct DesignPoint {
    double output_power_w = 0.0;
    double squeezing_db = 0.0;
    Scheme scheme = Scheme::kPassiveActive;
};

// Absolute technical-noise level (linear, 1/Hz) of a scheme at the
// evaluation frequency.
double scheme_tn_abs(const SchemeConfig& cfg, Scheme scheme);

// V_b in dB of squeezing for one output power.
double evaluate_squeezing_db(const SchemeConfig& cfg, Scheme scheme, double power_w);

std::vector<DesignPoint> sweep_power(const SchemeConfig& cfg, Scheme scheme,
                                     std::span<const double> powers_w);

// Power sweep default: log-spaced 10 uW - 100 mW.
std::vector<double> default_power_sweep(int points = 50);

// Largest output power at which the scheme still reaches the target
// squeezing. Analytic inversion for the Eq-1 combiner; bisection for the
// exact beam-splitter mode.
double max_power_at_target(const SchemeConfig& cfg, Scheme scheme, double target_squeezing_db);

// Shot-noise reference vs power: (power, RSN in dB/Hz) pairs.
std::vector<std::pair<double, double>> rsn_vs_power(std::span<const double> powers_w,
                                                    double wavelength_m);

// Inverse of the RSN expression: power whose shot noise sits at the target
// level.
double required_inloop_power(double target_dbhz, double wavelength_m);

} // namespace sqz
