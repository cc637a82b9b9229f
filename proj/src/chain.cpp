#include "sqzsim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqz {

NoisePsd free_running_psd(const LaserParams& laser, const FrequencyGrid& grid) {
    if (!std::isfinite(laser.free_running_dbhz)) {
        throw std::domain_error("free_running_psd: floor must be finite");
    }
    const double floor_lin = db_to_lin(laser.free_running_dbhz);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = floor_lin;
        if (laser.flicker_corner_hz > 0) v *= 1.0 + laser.flicker_corner_hz / grid[i];
        vals[i] = v;
    }
    return NoisePsd(grid, std::move(vals));
}

double passive_suppression_db(const PassiveStageParams& stage, double f_hz) {
    if (!(stage.suppression_db >= 0)) {
        throw std::domain_error("passive stage: suppression must be >= 0 dB");
    }
    if (!(stage.band_low_hz < stage.band_high_hz)) {
        throw std::domain_error("passive stage: band_low must be < band_high");
    }
    if (f_hz >= stage.band_low_hz && f_hz <= stage.band_high_hz) return stage.suppression_db;
    // Linear roll-off in log-log, reaching 0 dB one decade past the edge.
    double decades;
    if (f_hz < stage.band_low_hz) {
        decades = std::log10(stage.band_low_hz / f_hz);
    } else {
        decades = std::log10(f_hz / stage.band_high_hz);
    }
    return std::max(0.0, stage.suppression_db * (1.0 - decades));
}

NoisePsd passive_psd(const NoisePsd& tn_f, const PassiveStageParams& stage) {
    std::vector<double> vals(tn_f.size());
    for (std::size_t i = 0; i < tn_f.size(); ++i) {
        vals[i] = tn_f[i] * db_to_lin(-passive_suppression_db(stage, tn_f.grid()[i]));
    }
    return NoisePsd(tn_f.grid(), std::move(vals));
}

std::complex<double> loop_gain(const LoopParams& loop, double f_hz) {
    if (!(f_hz > 0)) throw std::domain_error("loop_gain: frequency must be > 0");
    if (!(loop.unity_gain_freq_hz > 0)) throw std::domain_error("loop_gain: UGF must be > 0");
    if (!(loop.delay_s >= 0)) throw std::domain_error("loop_gain: delay must be >= 0");
    const double g0 = std::pow(10.0, loop.dc_gain_db / 20.0);
    double mag = loop.unity_gain_freq_hz / f_hz;
    if (loop.boost_corner_hz > 0) mag *= 1.0 + loop.boost_corner_hz / f_hz;
    mag = std::min(g0, mag);
    const double phase = -2.0 * std::numbers::pi * f_hz * loop.delay_s;
    return std::polar(mag, phase);
}

double loop_suppression(const LoopParams& loop, double f_hz) {
    if (!(loop.reflectivity > 0) || loop.reflectivity > 1.0) {
        throw std::domain_error("loop: reflectivity must be in (0, 1]");
    }
    const std::complex<double> g = loop_gain(loop, f_hz);
    return std::norm(1.0 + std::sqrt(loop.reflectivity) * g);
}

double rsn_inloop(const LoopParams& loop, double wavelength_m) {
    if (!(loop.inloop_power_w > 0)) throw std::domain_error("loop: in-loop power must be > 0");
    return rsn(loop.inloop_power_w, wavelength_m);
}

double electronic_noise_ratio(const LoopParams& loop, double wavelength_m) {
    return db_to_lin(loop.electronic_noise_dbhz) / rsn_inloop(loop, wavelength_m);
}

double closed_loop_at(double tn_input_lin, const LoopParams& loop, double v_darkport,
                      double wavelength_m, double f_hz) {
    const double s = loop_suppression(loop, f_hz);
    const double rsn_il = rsn_inloop(loop, wavelength_m);
    const double v_e = electronic_noise_ratio(loop, wavelength_m);
    const double r = loop.reflectivity;
    return tn_input_lin / s                      // residual technical noise
           + rsn_il                              // in-loop quantum noise floor
           + rsn_il * (1.0 - r) * v_darkport / s // dark-port coupling
           + rsn_il * v_e / s;                   // electronic feedthrough
}

NoisePsd closed_loop_psd(const NoisePsd& tn_input, const LoopParams& loop,
                         const QuadratureVariance& v_darkport, const LaserParams& laser) {
    if (tn_input.grid() != v_darkport.grid) {
        throw ShapeError("closed_loop_psd: grid mismatch between input PSD and dark-port variance");
    }
    std::vector<double> vals(tn_input.size());
    for (std::size_t i = 0; i < tn_input.size(); ++i) {
        vals[i] = closed_loop_at(tn_input[i], loop, v_darkport.squeezed[i], laser.wavelength_m,
                                 tn_input.grid()[i]);
    }
    return NoisePsd(tn_input.grid(), std::move(vals));
}

double combine_bs_at(double v_v, double r, double tn_over_rsn, BsModel model) {
    if (!(r > 0) || r > 1.0) throw std::domain_error("combine_bs: r must be in (0, 1]");
    if (model == BsModel::kEq1) return v_v / r + tn_over_rsn;
    return r * v_v + (1.0 - r) + tn_over_rsn;
}

CombinedResult combine_bs(const QuadratureVariance& v_v, double r, const NoisePsd& tn_ool,
                          double rsn_ool, double output_power_w, BsModel model) {
    if (!(rsn_ool > 0)) throw std::domain_error("combine_bs: rsn_ool must be > 0");
    if (v_v.grid != tn_ool.grid()) throw ShapeError("combine_bs: grid mismatch");
    CombinedResult out{tn_ool.grid(), std::vector<double>(tn_ool.size()), output_power_w,
                       std::vector<double>(tn_ool.size())};
    for (std::size_t i = 0; i < tn_ool.size(); ++i) {
        out.variance[i] = combine_bs_at(v_v.squeezed[i], r, tn_ool[i] / rsn_ool, model);
        out.squeezing_db[i] = -lin_to_db(out.variance[i]);
    }
    return out;
}

} // namespace sqz
