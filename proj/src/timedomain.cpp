#include "sqzsim/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fftw3.h>

#include "sqzsim/kernels.hpp"

namespace sqz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Portable Gaussian stream: mt19937_64 + Box-Muller, independent of the
// standard library's normal_distribution implementation.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(kTwoPi * u2);
        have_spare_ = true;
        return mag * std::cos(kTwoPi * u2);
    }

private:
    double uniform() {
        return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

struct FftwRealPlan {
    std::size_t n;
    double* in;
    fftw_complex* out;
    fftw_plan plan;

    explicit FftwRealPlan(std::size_t len) : n(len) {
        in = fftw_alloc_real(n);
        out = fftw_alloc_complex(n / 2 + 1);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    ~FftwRealPlan() {
        fftw_destroy_plan(plan);
        fftw_free(in);
        fftw_free(out);
    }
    FftwRealPlan(const FftwRealPlan&) = delete;
    FftwRealPlan& operator=(const FftwRealPlan&) = delete;
};

} // namespace

TimeSeries gen_noise(double floor_dbhz, double flicker_corner_hz, std::size_t n, double rate_hz,
                     std::uint64_t seed) {
    if (n == 0) throw std::domain_error("gen_noise: n must be > 0");
    if (!(rate_hz > 0)) throw std::domain_error("gen_noise: sample rate must be > 0");
    GaussianStream g(seed);
    // One-sided floor S0 spread over [0, fs/2]: per-sample variance S0*fs/2.
    const double sigma = std::sqrt(db_to_lin(floor_dbhz) * rate_hz / 2.0);
    TimeSeries ts{rate_hz, std::vector<double>(n)};
    for (auto& s : ts.samples) s = sigma * g.next();
    if (flicker_corner_hz <= 0 || n < 4) return ts;

    // Shape the white series in the frequency domain by sqrt(1 + fc/f).
    const std::size_t m = next_pow2(2 * n);
    std::vector<double> padded(m, 0.0);
    // Fill the whole padded buffer with fresh noise so the shaping filter
    // sees a stationary input rather than a zero-padded burst.
    for (std::size_t i = 0; i < n; ++i) padded[i] = ts.samples[i];
    for (std::size_t i = n; i < m; ++i) padded[i] = sigma * g.next();

    FftwRealPlan fwd(m);
    for (std::size_t i = 0; i < m; ++i) fwd.in[i] = padded[i];
    fftw_execute(fwd.plan);

    const std::size_t bins = m / 2 + 1;
    std::vector<double> spec(2 * bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double f = (k == 0) ? rate_hz / static_cast<double>(m) : k * rate_hz / static_cast<double>(m);
        const double shape = std::sqrt(1.0 + flicker_corner_hz / f);
        spec[2 * k] = fwd.out[k][0] * shape;
        spec[2 * k + 1] = fwd.out[k][1] * shape;
    }

    fftw_complex* cin = fftw_alloc_complex(bins);
    double* rout = fftw_alloc_real(m);
    fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(m), cin, rout, FFTW_ESTIMATE);
    for (std::size_t k = 0; k < bins; ++k) {
        cin[k][0] = spec[2 * k];
        cin[k][1] = spec[2 * k + 1];
    }
    fftw_execute(inv);
    const double norm = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) ts.samples[i] = rout[i] * norm;
    fftw_destroy_plan(inv);
    fftw_free(cin);
    fftw_free(rout);
    return ts;
}

DiscreteController DiscreteController::from_loop(const LoopParams& loop, double sample_rate_hz) {
    if (!(sample_rate_hz > 0)) throw std::domain_error("controller: sample rate must be > 0");
    DiscreteController c;
    const double fs2 = 2.0 * sample_rate_hz;
    const double g0 = std::pow(10.0, loop.dc_gain_db / 20.0);
    // Lag section: G0 / (1 + s/wc), wc placed so the in-band magnitude is
    // UGF/f and the DC value is G0.
    const double wc = kTwoPi * loop.unity_gain_freq_hz / g0;
    Section lag;
    lag.b0 = g0 * wc / (wc + fs2);
    lag.b1 = lag.b0;
    lag.a1 = (fs2 - wc) / (wc + fs2);
    c.sections_.push_back(lag);
    if (loop.boost_corner_hz > 0) {
        // PI boost: 1 + wb/s.
        const double wb = kTwoPi * loop.boost_corner_hz;
        Section pi;
        pi.b0 = (fs2 + wb) / fs2;
        pi.b1 = (wb - fs2) / fs2;
        pi.a1 = 1.0;
        c.sections_.push_back(pi);
    }
    return c;
}

DiscreteController DiscreteController::static_gain(double g) {
    DiscreteController c;
    c.gain_ = g;
    return c;
}

double DiscreteController::step(double x) {
    double v = gain_ * x;
    for (auto& s : sections_) {
        const double y = s.b0 * v + s.b1 * s.x1 + s.a1 * s.y1;
        s.x1 = v;
        s.y1 = y;
        v = y;
    }
    return v;
}

std::complex<double> DiscreteController::response(double f_hz, double sample_rate_hz) const {
    const std::complex<double> zinv = std::polar(1.0, -kTwoPi * f_hz / sample_rate_hz);
    std::complex<double> h = gain_;
    for (const auto& s : sections_) {
        h *= (s.b0 + s.b1 * zinv) / (1.0 - s.a1 * zinv);
    }
    return h;
}

double DiscreteController::direct_feedthrough() const {
    double d = gain_;
    for (const auto& s : sections_) d *= s.b0;
    return d;
}

TimeSeries simulate_loop_with(const TimeSeries& input, DiscreteController controller,
                              double reflectivity, std::size_t delay_samples) {
    if (input.samples.empty()) throw std::domain_error("simulate_loop: empty input");
    const double sr = std::sqrt(reflectivity);
    const double rms = std::sqrt(kern::sum_sq(input.samples.data(), input.samples.size()) /
                                 static_cast<double>(input.samples.size()));
    const double guard = 1e6 * std::max(rms, 1e-300);

    const std::size_t n = input.samples.size();
    std::vector<double> out(n);
    if (delay_samples == 0) {
        // Implicit step: out = (in - sr*h) / (1 + sr*D) with h the
        // controller's zero-input response and D its direct feedthrough.
        const double d = controller.direct_feedthrough();
        for (std::size_t i = 0; i < n; ++i) {
            DiscreteController peek = controller;
            const double h = peek.step(0.0);
            out[i] = (input.samples[i] - sr * h) / (1.0 + sr * d);
            controller.step(out[i]);
            if (std::abs(out[i]) > guard) throw InstabilityError("simulate_loop: diverged");
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double fb = (i >= delay_samples) ? controller.step(out[i - delay_samples]) : 0.0;
            out[i] = input.samples[i] - sr * fb;
            if (std::abs(out[i]) > guard) throw InstabilityError("simulate_loop: diverged");
        }
    }
    const std::size_t skip = n / 10;
    return TimeSeries{input.sample_rate_hz,
                      std::vector<double>(out.begin() + static_cast<std::ptrdiff_t>(skip), out.end())};
}

TimeSeries simulate_loop(const TimeSeries& input, const LoopParams& loop) {
    const auto d = static_cast<std::size_t>(std::llround(loop.delay_s * input.sample_rate_hz));
    return simulate_loop_with(input, DiscreteController::from_loop(loop, input.sample_rate_hz),
                              loop.reflectivity, d);
}

double discrete_loop_suppression(const LoopParams& loop, double sample_rate_hz, double f_hz) {
    const auto c = DiscreteController::from_loop(loop, sample_rate_hz);
    const auto d = static_cast<std::size_t>(std::llround(loop.delay_s * sample_rate_hz));
    const std::complex<double> zd =
        std::polar(1.0, -kTwoPi * f_hz * static_cast<double>(d) / sample_rate_hz);
    return std::norm(1.0 + std::sqrt(loop.reflectivity) * c.response(f_hz, sample_rate_hz) * zd);
}

NoisePsd welch_psd(const TimeSeries& x, std::size_t segment_len, double overlap) {
    const std::size_t n = x.samples.size();
    if (segment_len == 0 || (segment_len & (segment_len - 1)) != 0) {
        throw std::domain_error("welch_psd: segment length must be a power of two");
    }
    if (segment_len > n) throw std::domain_error("welch_psd: series shorter than one segment");
    if (!(overlap >= 0) || overlap >= 1.0) {
        throw std::domain_error("welch_psd: overlap must be in [0, 1)");
    }
    const double fs = x.sample_rate_hz;
    const std::size_t hop =
        std::max<std::size_t>(1, static_cast<std::size_t>(segment_len * (1.0 - overlap)));

    std::vector<double> window(segment_len);
    for (std::size_t i = 0; i < segment_len; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) /
                                          static_cast<double>(segment_len)));
    }
    const double win_power = kern::sum_sq(window.data(), segment_len);

    FftwRealPlan fft(segment_len);
    const std::size_t bins = segment_len / 2 + 1;
    std::vector<double> acc(bins, 0.0);
    std::vector<double> seg(segment_len);

    std::size_t count = 0;
    for (std::size_t start = 0; start + segment_len <= n; start += hop) {
        kern::mul(seg.data(), x.samples.data() + start, window.data(), segment_len);
        for (std::size_t i = 0; i < segment_len; ++i) fft.in[i] = seg[i];
        fftw_execute(fft.plan);
        kern::accumulate_power(acc.data(), reinterpret_cast<const double*>(fft.out), bins);
        ++count;
    }

    const double norm = 2.0 / (fs * win_power * static_cast<double>(count));
    std::vector<double> freqs(bins - 2);
    std::vector<double> psd(bins - 2);
    for (std::size_t k = 1; k + 1 < bins; ++k) {
        freqs[k - 1] = static_cast<double>(k) * fs / static_cast<double>(segment_len);
        psd[k - 1] = acc[k] * norm;
    }
    return NoisePsd(FrequencyGrid(std::move(freqs)), std::move(psd));
}

VerifyReport verify_oracle(const LoopParams& loop, double input_floor_dbhz, std::uint64_t seed,
                           int repetitions, double f_lo_hz, double f_hi_hz, std::size_t segments,
                           double tolerance_db) {
    if (repetitions < 1) throw std::domain_error("verify_oracle: repetitions must be >= 1");
    const double fs = std::max(40e6, 20.0 * loop.unity_gain_freq_hz);
    const std::size_t seg_len = 65536;
    const std::size_t hop = seg_len / 2;
    const std::size_t n = std::max<std::size_t>((segments - 1) * hop + seg_len, std::size_t{1} << 18);
    // Extra 10% generated so the discarded settling transient still leaves
    // enough samples for the requested segment count.
    const std::size_t n_gen = n + n / 9 + 1;

    VerifyReport report;
    report.repetitions = repetitions;

    // Sub-bands: 6 per decade; deviations folded into per-decade rows.
    struct Decade {
        double lo, hi, max_dev = 0.0;
    };
    std::vector<Decade> decades;
    for (double lo = f_lo_hz; lo < f_hi_hz * (1 - 1e-12); lo *= 10.0) {
        decades.push_back({lo, std::min(lo * 10.0, f_hi_hz)});
    }

    for (int rep = 0; rep < repetitions; ++rep) {
        // Distinct, reproducible stream per repetition.
        const std::uint64_t rep_seed = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(rep + 1);
        const TimeSeries input = gen_noise(input_floor_dbhz, 0.0, n_gen, fs, rep_seed);
        const TimeSeries out = simulate_loop(input, loop);
        const NoisePsd psd = welch_psd(out, seg_len, 0.5);
        const double floor_lin = db_to_lin(input_floor_dbhz);

        for (auto& dec : decades) {
            // Sequential sub-bands, nominally six per decade but never fewer
            // than 10 bins each: single-bin periodogram scatter at 64
            // segments is ~0.5 dB, so sparse low-frequency decades are
            // pooled until the averaged estimator noise is well below the
            // tolerance. Measurement and prediction are averaged over the
            // same bins, so the steep in-band slope cancels.
            std::vector<std::size_t> bins;
            for (std::size_t i = 0; i < psd.size(); ++i) {
                const double f = psd.grid()[i];
                if (f >= dec.lo && f < dec.hi) bins.push_back(i);
            }
            if (bins.empty()) continue;
            const std::size_t group = std::max<std::size_t>(10, bins.size() / 6);
            for (std::size_t start = 0; start < bins.size(); start += group) {
                const std::size_t stop = (bins.size() - start < 2 * group)
                                             ? bins.size()
                                             : start + group;
                double meas = 0.0, pred = 0.0;
                for (std::size_t b = start; b < stop; ++b) {
                    const std::size_t i = bins[b];
                    meas += psd[i];
                    pred += floor_lin / discrete_loop_suppression(loop, fs, psd.grid()[i]);
                }
                const double dev = std::abs(10.0 * std::log10(meas / pred));
                dec.max_dev = std::max(dec.max_dev, dev);
                if (stop == bins.size()) break;
            }
        }
    }

    for (const auto& dec : decades) {
        VerifyBand band{dec.lo, dec.hi, dec.max_dev, dec.max_dev < tolerance_db};
        report.max_dev_db = std::max(report.max_dev_db, band.max_dev_db);
        report.bands.push_back(band);
    }
    report.pass = std::all_of(report.bands.begin(), report.bands.end(),
                              [](const VerifyBand& b) { return b.pass; });
    return report;
}

} // namespace sqz
