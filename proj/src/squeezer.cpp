#include "sqzsim/squeezer.hpp"

#include <cmath>

namespace sqz {

QuadratureVariance QuadratureVariance::from_squeezing_db(const FrequencyGrid& g, double squeezing_db) {
    const double vm = db_to_lin(-squeezing_db);
    const double vp = db_to_lin(squeezing_db);
    return {g, std::vector<double>(g.size(), vm), std::vector<double>(g.size(), vp)};
}

QuadratureVariance opo_variance(const SqueezerParams& p, const FrequencyGrid& grid) {
    if (!(p.pump_ratio >= 0) || p.pump_ratio >= 1.0) {
        throw std::domain_error("opo_variance: pump ratio must be in [0, 1) (below threshold)");
    }
    if (!(p.total_efficiency > 0) || p.total_efficiency > 1.0) {
        throw std::domain_error("opo_variance: efficiency must be in (0, 1]");
    }
    if (!(p.cavity_hwhm_hz > 0)) {
        throw std::domain_error("opo_variance: cavity half-linewidth must be > 0");
    }
    const double x = p.pump_ratio;
    const double eta = p.total_efficiency;
    QuadratureVariance out{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double y2 = (grid[i] / p.cavity_hwhm_hz) * (grid[i] / p.cavity_hwhm_hz);
        out.squeezed[i] = 1.0 - eta * 4.0 * x / ((1.0 + x) * (1.0 + x) + y2);
        out.antisqueezed[i] = 1.0 + eta * 4.0 * x / ((1.0 - x) * (1.0 - x) + y2);
    }
    return out;
}

QuadratureVariance apply_loss(const QuadratureVariance& v, double efficiency) {
    if (!(efficiency >= 0) || efficiency > 1.0) {
        throw std::domain_error("apply_loss: efficiency must be in [0, 1]");
    }
    QuadratureVariance out = v;
    for (std::size_t i = 0; i < out.squeezed.size(); ++i) {
        out.squeezed[i] = efficiency * v.squeezed[i] + (1.0 - efficiency);
        out.antisqueezed[i] = efficiency * v.antisqueezed[i] + (1.0 - efficiency);
    }
    return out;
}

QuadratureVariance apply_phase_jitter(const QuadratureVariance& v, double theta_rms_rad,
                                      JitterModel model) {
    if (!(theta_rms_rad >= 0)) throw std::domain_error("apply_phase_jitter: theta must be >= 0");
    double w_keep = 0.0;
    double w_mix = 0.0;
    if (model == JitterModel::kDeterministic) {
        const double c = std::cos(theta_rms_rad);
        const double s = std::sin(theta_rms_rad);
        w_keep = c * c;
        w_mix = s * s;
    } else {
        const double e = std::exp(-2.0 * theta_rms_rad * theta_rms_rad);
        w_keep = 0.5 * (1.0 + e);
        w_mix = 0.5 * (1.0 - e);
    }
    QuadratureVariance out = v;
    for (std::size_t i = 0; i < out.squeezed.size(); ++i) {
        out.squeezed[i] = w_keep * v.squeezed[i] + w_mix * v.antisqueezed[i];
        out.antisqueezed[i] = w_keep * v.antisqueezed[i] + w_mix * v.squeezed[i];
    }
    return out;
}

} // namespace sqz
