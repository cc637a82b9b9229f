#pragma once

// Stabilization-chain component models: free-running laser noise, passive
// suppression stage, active feedback loop, and the beam-splitter combiner
// that turns a stabilized beam plus squeezed vacuum into bright squeezed
// light.

#include <complex>

#include "sqzsim/spectra.hpp"
#include "sqzsim/squeezer.hpp"

namespace sqz {

struct LaserParams {
    double wavelength_m = 1550e-9;
    double power_out_w = 100e-6;        // out-of-loop output power
    double free_running_dbhz = -125.0;  // flat technical-noise floor
    double flicker_corner_hz = 0.0;     // 1/f corner; 0 disables
};

// Broadband passive suppressor (SHG photon-recycling stage), modeled as a
// flat in-band attenuation with 20 dB/decade roll-off to 0 dB one decade
// beyond each band edge.
struct PassiveStageParams {
    double suppression_db = 32.0;
    double band_low_hz = 1e3;
    double band_high_hz = 1e6;
};

struct LoopParams {
    double dc_gain_db = 80.0;          // gain magnitude clamp, 20*log10
    double unity_gain_freq_hz = 2e6;   // integrator unity-gain frequency
    double delay_s = 50e-9;            // loop dead time
    double reflectivity = 0.99;        // r of the unbalanced combiner
    double inloop_power_w = 10e-3;     // detected in-loop power, sets RSN_IL
    double electronic_noise_dbhz = -168.0; // detector electronic noise floor
    double boost_corner_hz = 0.0;      // PI low-frequency gain boost; 0 = pure integrator
};

struct CombinedResult {
    FrequencyGrid grid;
    std::vector<double> variance;      // V_b, vacuum = 1
    double output_power_w = 0.0;
    std::vector<double> squeezing_db;  // -10*log10(V_b)
};

enum class BsModel {
    kEq1,     // V_b = V_v / r + TN/RSN
    kExactBs, // V_b = r*V_v + (1 - r) + TN/RSN
};

NoisePsd free_running_psd(const LaserParams& laser, const FrequencyGrid& grid);

// In-band suppression of the passive stage at a single frequency, in dB >= 0.
double passive_suppression_db(const PassiveStageParams& stage, double f_hz);
NoisePsd passive_psd(const NoisePsd& tn_f, const PassiveStageParams& stage);

// Feedback gain G(f): magnitude min(G0, UGF/f * (1 + f_boost/f)), phase from
// the loop dead time only.
std::complex<double> loop_gain(const LoopParams& loop, double f_hz);

// Suppression factor S(f) = |1 + sqrt(r) * G(f)|^2.
double loop_suppression(const LoopParams& loop, double f_hz);

// In-loop relative shot noise 2*h*nu/P_il.
double rsn_inloop(const LoopParams& loop, double wavelength_m);

// Electronic noise normalized to RSN_IL (the V_e of the closed-loop model).
double electronic_noise_ratio(const LoopParams& loop, double wavelength_m);

// Out-of-loop technical noise of the actively stabilized beam at one
// frequency: residual input noise, in-loop shot noise, dark-port coupling,
// and electronic feedthrough.
double closed_loop_at(double tn_input_lin, const LoopParams& loop, double v_darkport,
                      double wavelength_m, double f_hz);

NoisePsd closed_loop_psd(const NoisePsd& tn_input, const LoopParams& loop,
                         const QuadratureVariance& v_darkport, const LaserParams& laser);

// Beam-splitter combiner: V_b(f) from squeezed-vacuum variance, splitter
// reflectivity, out-of-loop technical noise and shot-noise reference.
CombinedResult combine_bs(const QuadratureVariance& v_v, double r, const NoisePsd& tn_ool,
                          double rsn_ool, double output_power_w, BsModel model = BsModel::kEq1);

// Scalar core of combine_bs.
double combine_bs_at(double v_v, double r, double tn_over_rsn, BsModel model = BsModel::kEq1);

} // namespace sqz
