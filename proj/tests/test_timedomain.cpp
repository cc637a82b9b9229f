#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sqzsim/timedomain.hpp"

using namespace sqz;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double mean_psd_db(const NoisePsd& psd, double f_lo, double f_hi) {
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < psd.size(); ++i) {
        if (psd.grid()[i] < f_lo || psd.grid()[i] > f_hi) continue;
        acc += psd[i];
        ++count;
    }
    REQUIRE(count > 0);
    return lin_to_db(acc / static_cast<double>(count));
}

} // namespace

TEST_CASE("noise synthesis is deterministic per seed") {
    auto a = gen_noise(-125.0, 0.0, 4096, 20e6, 42);
    auto b = gen_noise(-125.0, 0.0, 4096, 20e6, 42);
    CHECK(a.samples == b.samples);
    auto c = gen_noise(-125.0, 0.0, 4096, 20e6, 43);
    CHECK(a.samples != c.samples);

    auto fa = gen_noise(-125.0, 1e4, 4096, 20e6, 42);
    auto fb = gen_noise(-125.0, 1e4, 4096, 20e6, 42);
    CHECK(fa.samples == fb.samples);
}

TEST_CASE("white-noise sample variance matches the requested floor") {
    // One-sided -125 dB/Hz over 10 MHz of bandwidth: sigma^2 = 3.1623e-6.
    const std::size_t n = 1 << 20;
    auto ts = gen_noise(-125.0, 0.0, n, 20e6, 7);
    double var = 0.0;
    for (double s : ts.samples) var += s * s;
    var /= static_cast<double>(n);
    CHECK(near(var / 3.1623e-6, 1.0, 0.01));
}

TEST_CASE("welch floor of synthesized white noise sits at the requested level") {
    auto ts = gen_noise(-125.0, 0.0, 1 << 20, 2e6, 11);
    auto psd = welch_psd(ts, 8192);
    CHECK(near(mean_psd_db(psd, 1e4, 1e5), -125.0, 0.3));
    CHECK(near(mean_psd_db(psd, 1e5, 9e5), -125.0, 0.3));
}

TEST_CASE("welch grid holds the positive fft bin frequencies") {
    auto ts = gen_noise(-130.0, 0.0, 65536, 1e6, 3);
    auto psd = welch_psd(ts, 1024);
    REQUIRE(psd.size() == 511); // 513 bins minus dc and nyquist
    CHECK(near(psd.grid()[0], 1e6 / 1024, 1e-9));
    CHECK(near(psd.grid()[510], 511.0 * 1e6 / 1024, 1e-6));
}

TEST_CASE("flicker shaping raises the low-frequency floor by 1 + fc/f") {
    auto ts = gen_noise(-125.0, 1e4, 1 << 20, 2e6, 13);
    auto psd = welch_psd(ts, 8192);
    // At 2-4 kHz the shaping is a factor 3.5-6; well above the corner it is
    // gone.
    const double lo = mean_psd_db(psd, 2e3, 4e3);
    const double expect = -125.0 + 10 * std::log10(1.0 + 1e4 / 2.9e3);
    CHECK(near(lo, expect, 0.7));
    CHECK(near(mean_psd_db(psd, 2e5, 8e5), -125.0, 0.3));
}

TEST_CASE("a bin-centered tone carries its full power through the welch estimate") {
    const double fs = 1e6;
    const std::size_t n = 1 << 16, seg = 8192;
    const double amp = 1e-3;
    const double f0 = 32.0 * fs / static_cast<double>(seg);
    TimeSeries ts{fs, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        ts.samples[i] = amp * std::sin(2 * std::numbers::pi * f0 * static_cast<double>(i) / fs);
    }
    auto psd = welch_psd(ts, seg);
    double power = 0.0;
    const double df = fs / static_cast<double>(seg);
    for (std::size_t i = 0; i < psd.size(); ++i) power += psd[i] * df;
    CHECK(near(power / (amp * amp / 2.0), 1.0, 0.01));
}

TEST_CASE("welch rejects malformed requests") {
    auto ts = gen_noise(-130.0, 0.0, 4096, 1e6, 1);
    CHECK_THROWS(welch_psd(ts, 1000));  // not a power of two
    CHECK_THROWS(welch_psd(ts, 8192));  // longer than the series
    CHECK_THROWS(welch_psd(ts, 1024, 1.0));
}

TEST_CASE("static controller closes the loop algebraically") {
    auto in = gen_noise(-125.0, 0.0, 10000, 1e6, 5);
    const double g = 9.0, r = 0.99;
    auto out = simulate_loop_with(in, DiscreteController::static_gain(g), r, 0);
    const std::size_t off = in.samples.size() - out.samples.size();
    const double s = 1.0 + std::sqrt(r) * g;
    for (std::size_t i = 0; i < out.samples.size(); i += 97) {
        CHECK(near(out.samples[i] * s, in.samples[i + off], 1e-12));
    }
}

TEST_CASE("zero feedback gain returns the input unchanged") {
    auto in = gen_noise(-125.0, 0.0, 10000, 1e6, 6);
    auto out = simulate_loop_with(in, DiscreteController::static_gain(0.0), 0.99, 0);
    const std::size_t off = in.samples.size() - out.samples.size();
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        CHECK(out.samples[i] == in.samples[i + off]);
    }
}

TEST_CASE("unstable static loop raises InstabilityError") {
    auto in = gen_noise(-125.0, 0.0, 10000, 1e6, 8);
    CHECK_THROWS_AS(simulate_loop_with(in, DiscreteController::static_gain(3.0), 0.99, 1),
                    InstabilityError);
}

TEST_CASE("discretized controller magnitude follows UGF/f in band") {
    LoopParams loop; // UGF 2 MHz, 80 dB clamp
    auto c = DiscreteController::from_loop(loop, 40e6);
    for (double f : {2e4, 1e5, 5e5}) {
        CHECK(near(std::abs(c.response(f, 40e6)) / (2e6 / f), 1.0, 0.02));
    }
    // DC value sits at the gain clamp.
    CHECK(near(std::abs(c.response(1e-3, 40e6)) / 1e4, 1.0, 0.01));
    // Static controllers respond flat.
    auto s = DiscreteController::static_gain(7.5);
    CHECK(near(std::abs(s.response(1e5, 40e6)), 7.5, 1e-12));
    CHECK(near(s.direct_feedthrough(), 7.5, 1e-12));
}

TEST_CASE("discrete and continuous loop suppression converge deep in band") {
    // The continuous model carries delay-only phase while the discrete
    // controller has the integrator's -90 degrees as well, so the two agree
    // only where the gain is large and the suppression is set by |G|^2.
    LoopParams loop;
    for (double f : {3e3, 1e4}) {
        const double d_db = 10 * std::log10(discrete_loop_suppression(loop, 40e6, f));
        const double c_db = 10 * std::log10(loop_suppression(loop, f));
        CHECK(near(d_db, c_db, 0.1));
    }
}

TEST_CASE("oracle matches the analytic residual-noise prediction") {
    LoopParams loop; // defaults: pure integrator, UGF 2 MHz, 50 ns delay
    auto report = verify_oracle(loop, -125.0, 12345, 1);
    CHECK(report.pass);
    CHECK(report.max_dev_db < 1.0);
    REQUIRE(report.bands.size() == 3);
    CHECK(report.bands.front().f_lo_hz == 1e3);
    CHECK(report.bands.back().f_hi_hz == 5e5);
}

TEST_CASE("oracle agreement holds across randomized stable loops") {
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> ugf(5e5, 3e6), gain(60.0, 100.0), delay(0.0, 60e-9),
        refl(0.9, 1.0);
    for (int draw = 0; draw < 10; ++draw) {
        LoopParams loop;
        loop.unity_gain_freq_hz = ugf(rng);
        loop.dc_gain_db = gain(rng);
        loop.delay_s = delay(rng);
        loop.reflectivity = refl(rng);
        const double f_hi = std::min(5e5, loop.unity_gain_freq_hz / 4.0);
        auto report = verify_oracle(loop, -125.0, 1000 + static_cast<std::uint64_t>(draw), 1,
                                    1e3, f_hi);
        CHECK(report.pass);
        CHECK(report.max_dev_db < 1.0);
    }
}

TEST_CASE("oracle also holds with the low-frequency boost engaged") {
    LoopParams loop;
    loop.boost_corner_hz = 1e6;
    auto report = verify_oracle(loop, -125.0, 777, 1);
    CHECK(report.pass);
}
