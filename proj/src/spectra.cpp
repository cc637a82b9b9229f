#include "sqzsim/spectra.hpp"

#include <cmath>
#include <cstddef>

#include "sqzsim/kernels.hpp"

namespace sqz {

FrequencyGrid FrequencyGrid::logspace(double f_min_hz, double f_max_hz, int points_per_decade) {
    if (!(f_min_hz > 0) || !(f_max_hz > f_min_hz)) {
        throw std::domain_error("FrequencyGrid::logspace: need 0 < f_min < f_max");
    }
    if (points_per_decade < 1) {
        throw std::domain_error("FrequencyGrid::logspace: points_per_decade must be >= 1");
    }
    const double lo = std::log10(f_min_hz);
    const double hi = std::log10(f_max_hz);
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) * points_per_decade - 1e-9));
    std::vector<double> pts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        pts[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    }
    pts.back() = f_max_hz;
    pts.front() = f_min_hz;
    return FrequencyGrid(std::move(pts));
}

FrequencyGrid::FrequencyGrid(std::vector<double> points_hz) : points_(std::move(points_hz)) {
    if (points_.empty()) throw std::domain_error("FrequencyGrid: empty");
    double prev = 0.0;
    for (double f : points_) {
        if (!(f > prev) || !std::isfinite(f)) {
            throw std::domain_error("FrequencyGrid: points must be positive and strictly increasing");
        }
        prev = f;
    }
}

NoisePsd::NoisePsd(FrequencyGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ShapeError("NoisePsd: values length must equal grid length");
    }
    for (double v : values_) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::domain_error("NoisePsd: values must be finite and >= 0");
        }
    }
}

NoisePsd NoisePsd::flat(const FrequencyGrid& grid, double level_lin) {
    return NoisePsd(grid, std::vector<double>(grid.size(), level_lin));
}

std::vector<double> NoisePsd::values_db() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = lin_to_db(values_[i]);
    return out;
}

double db_to_lin(double x_db) { return std::pow(10.0, x_db / 10.0); }

double lin_to_db(double x_lin) {
    if (!(x_lin > 0)) throw std::domain_error("lin_to_db: argument must be > 0");
    return 10.0 * std::log10(x_lin);
}

double rsn(double power_w, double wavelength_m) {
    if (!(power_w > 0)) throw std::domain_error("rsn: power must be > 0");
    if (!(wavelength_m > 0)) throw std::domain_error("rsn: wavelength must be > 0");
    const double nu = PhysicalConstants::speed_of_light / wavelength_m;
    return 2.0 * PhysicalConstants::planck * nu / power_w;
}

double incoherent_sum_db(std::span<const double> terms_db) {
    if (terms_db.empty()) throw std::domain_error("incoherent_sum_db: empty term list");
    double acc = 0.0;
    for (double t : terms_db) acc += db_to_lin(t);
    return lin_to_db(acc);
}

NoisePsd psd_add(const NoisePsd& a, const NoisePsd& b) {
    if (a.grid() != b.grid()) throw ShapeError("psd_add: grid mismatch");
    std::vector<double> out(a.size());
    kern::add(out.data(), a.values().data(), b.values().data(), out.size());
    return NoisePsd(a.grid(), std::move(out));
}

NoisePsd psd_scale(const NoisePsd& a, double k) {
    if (!(k >= 0)) throw std::domain_error("psd_scale: factor must be >= 0");
    std::vector<double> out(a.size());
    kern::scale(out.data(), a.values().data(), k, out.size());
    return NoisePsd(a.grid(), std::move(out));
}

} // namespace sqz
