#pragma once

// Time-domain Monte Carlo oracle for the active loop: synthesized technical
// noise driven through a discrete delayed-feedback controller, spectrum
// estimated with Welch averaging. Independent of the analytic closed-loop
// path it validates.

#include <complex>
#include <cstdint>
#include <vector>

#include "sqzsim/chain.hpp"
#include "sqzsim/spectra.hpp"

namespace sqz {

struct TimeSeries {
    double sample_rate_hz = 0.0;
    std::vector<double> samples;
};

struct SimConfig {
    double sample_rate_hz = 40e6; // >= 20x the loop UGF
    double duration_s = 0.06;
    std::uint64_t seed = 0;
    LoopParams loop;
    double input_floor_dbhz = -125.0;
    double input_flicker_corner_hz = 0.0;
};

// Gaussian noise whose one-sided PSD is flat at `floor_dbhz`, shaped by
// (1 + corner/f) when a flicker corner is given. Deterministic per seed.
TimeSeries gen_noise(double floor_dbhz, double flicker_corner_hz, std::size_t n, double rate_hz,
                     std::uint64_t seed);

// Cascade of first-order sections y[n] = b0 x[n] + b1 x[n-1] + a1 y[n-1],
// realizing the loop controller at a given sample rate.
class DiscreteController {
public:
    struct Section {
        double b0 = 1.0, b1 = 0.0, a1 = 0.0;
        double x1 = 0.0, y1 = 0.0;
    };

    // Bilinear discretization of the DC-clamped integrator (plus optional PI
    // boost) described by LoopParams.
    static DiscreteController from_loop(const LoopParams& loop, double sample_rate_hz);
    static DiscreteController static_gain(double g);

    double step(double x);
    // Frequency response at f for sample rate fs (exact DTFT of the sections).
    std::complex<double> response(double f_hz, double sample_rate_hz) const;
    // Product of the sections' direct feedthrough coefficients.
    double direct_feedthrough() const;

private:
    std::vector<Section> sections_;
    double gain_ = 1.0;
};

// Closed loop out[n] = in[n] - sqrt(r) * C(out[n - d]), d = round(delay*fs).
// Returns the steady-state error signal (first 10% discarded). Throws
// InstabilityError when any sample exceeds 1e6 times the input RMS.
TimeSeries simulate_loop(const TimeSeries& input, const LoopParams& loop);
TimeSeries simulate_loop_with(const TimeSeries& input, DiscreteController controller,
                              double reflectivity, std::size_t delay_samples);

// Suppression factor of the discretized loop, |1 + sqrt(r) C(z) z^-d|^2 at
// z = exp(i 2 pi f / fs). This is the analytic prediction the oracle is
// compared against.
double discrete_loop_suppression(const LoopParams& loop, double sample_rate_hz, double f_hz);

// One-sided Welch estimate, Hann window. Grid holds the positive FFT bin
// frequencies (DC and Nyquist excluded). Segment length must be a power of
// two and no longer than the series.
NoisePsd welch_psd(const TimeSeries& x, std::size_t segment_len, double overlap = 0.5);

// End-to-end oracle run: simulate the closed loop on white input noise and
// compare the Welch spectrum against the analytic residual-noise prediction
// for the same discrete controller. Deviations are evaluated on log-spaced
// sub-bands (several per decade, averaging out single-bin estimator noise)
// and reported per frequency decade.
struct VerifyBand {
    double f_lo_hz = 0.0;
    double f_hi_hz = 0.0;
    double max_dev_db = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyBand> bands;
    double max_dev_db = 0.0;
    bool pass = false;
    int repetitions = 0;
};

VerifyReport verify_oracle(const LoopParams& loop, double input_floor_dbhz, std::uint64_t seed,
                           int repetitions, double f_lo_hz = 1e3, double f_hi_hz = 500e3,
                           std::size_t segments = 64, double tolerance_db = 1.0);

} // namespace sqz
