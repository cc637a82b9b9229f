#pragma once

// Squeezed-vacuum source: below-threshold OPO sideband variances, degraded
// by optical loss and residual phase jitter. Variances are normalized to
// vacuum = 1.

#include <vector>

#include "sqzsim/spectra.hpp"

namespace sqz {

struct SqueezerParams {
    double pump_ratio = 0.0;        // x = sqrt(P_pump / P_threshold), in [0, 1)
    double cavity_hwhm_hz = 2.5e6;  // cavity half-linewidth
    double total_efficiency = 1.0;  // eta in (0, 1]
    double phase_jitter_rad = 0.0;  // rms squeezing-angle jitter
};

// Frequency-dependent quadrature variances, vacuum = 1.
struct QuadratureVariance {
    FrequencyGrid grid;
    std::vector<double> squeezed;      // V-
    std::vector<double> antisqueezed;  // V+

    static QuadratureVariance vacuum(const FrequencyGrid& g) {
        return {g, std::vector<double>(g.size(), 1.0), std::vector<double>(g.size(), 1.0)};
    }
    // Flat variance pair from a squeezing strength in dB (V- = 10^(-s/10),
    // V+ = 10^(+s/10)); used when the effective squeezing at the combiner is
    // specified directly instead of through the OPO model.
    static QuadratureVariance from_squeezing_db(const FrequencyGrid& g, double squeezing_db);
};

// Below-threshold OPO model:
//   V-+(f) = 1 -+ eta * 4x / ((1 +- x)^2 + (f / hwhm)^2)
// The phase-jitter budget in the params is NOT applied here; compose with
// apply_phase_jitter.
QuadratureVariance opo_variance(const SqueezerParams& p, const FrequencyGrid& grid);

// Loss mixes in vacuum: V' = eta*V + (1 - eta).
QuadratureVariance apply_loss(const QuadratureVariance& v, double efficiency);

enum class JitterModel {
    kDeterministic,   // V-' = V- cos^2(t) + V+ sin^2(t)
    kGaussianAverage, // weights (1 +- exp(-2 sigma^2)) / 2
};

QuadratureVariance apply_phase_jitter(const QuadratureVariance& v, double theta_rms_rad,
                                      JitterModel model = JitterModel::kDeterministic);

} // namespace sqz
