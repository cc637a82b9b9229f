#pragma once

// Spectral algebra: frequency grids, one-sided relative-intensity PSDs,
// shot-noise references and dB bookkeeping.
//
// Conventions (fixed, no unit library):
//   frequency  Hz
//   power      W
//   wavelength m
//   PSD        linear relative-intensity units, 1/Hz, one-sided
// PSDs are stored linear; dB appears only at I/O boundaries.

#include <cstddef>
#include <span>
#include <vector>

#include "sqzsim/errors.hpp"

namespace sqz {

struct PhysicalConstants {
    static constexpr double planck = 6.62607015e-34;     // J*s, CODATA exact
    static constexpr double speed_of_light = 299792458.0; // m/s, exact
};

// Strictly increasing, all-positive analysis frequencies.
class FrequencyGrid {
public:
    // Log-spaced grid, both endpoints included.
    static FrequencyGrid logspace(double f_min_hz, double f_max_hz, int points_per_decade = 100);
    // Measurement span of the reproduced spectra: 1 kHz - 1 MHz.
    static FrequencyGrid standard() { return logspace(1e3, 1e6, 100); }

    explicit FrequencyGrid(std::vector<double> points_hz);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    std::span<const double> points() const { return points_; }

    bool operator==(const FrequencyGrid&) const = default;

private:
    std::vector<double> points_;
};

// One-sided relative-intensity PSD over a grid. Values are linear (1/Hz),
// non-negative and finite.
class NoisePsd {
public:
    NoisePsd(FrequencyGrid grid, std::vector<double> values);
    static NoisePsd flat(const FrequencyGrid& grid, double level_lin);

    const FrequencyGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::vector<double> values_db() const;

private:
    FrequencyGrid grid_;
    std::vector<double> values_;
};

// 10^(x/10)
double db_to_lin(double x_db);
// 10*log10(x); x must be > 0
double lin_to_db(double x_lin);

// Relative shot noise 2*h*nu/P as a flat linear PSD level (1/Hz).
double rsn(double power_w, double wavelength_m);

// 10*log10(sum 10^(t_i/10)); uncorrelated superposition of dB terms.
double incoherent_sum_db(std::span<const double> terms_db);

// Pointwise uncorrelated sum / gain application. Grids must match.
NoisePsd psd_add(const NoisePsd& a, const NoisePsd& b);
NoisePsd psd_scale(const NoisePsd& a, double k);

} // namespace sqz
