#include "sqzsim/kernels.hpp"

namespace sqz::kern::scalar {

void add(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale(double* dst, const double* a, double k, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = k * a[i];
}

void axpy(double* dst, const double* a, double k, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += k * a[i];
}

double sum(const double* a, std::size_t n) {
    // 4-way partial sums; matches the lane order of the AVX2 variant so the
    // two agree to the last ulp on the same data.
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i];
        s1 += a[i + 1];
        s2 += a[i + 2];
        s3 += a[i + 3];
    }
    double tail = 0;
    for (; i < n; ++i) tail += a[i];
    return ((s0 + s2) + (s1 + s3)) + tail;
}

double sum_sq(const double* a, std::size_t n) {
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * a[i];
        s1 += a[i + 1] * a[i + 1];
        s2 += a[i + 2] * a[i + 2];
        s3 += a[i + 3] * a[i + 3];
    }
    double tail = 0;
    for (; i < n; ++i) tail += a[i] * a[i];
    return ((s0 + s2) + (s1 + s3)) + tail;
}

void accumulate_power(double* acc, const double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = z[2 * i];
        const double im = z[2 * i + 1];
        acc[i] += re * re + im * im;
    }
}

} // namespace sqz::kern::scalar
