#pragma once

// Data-parallel array kernels used by the spectral and Welch inner loops.
// Scalar reference implementations always exist; on x86-64 an AVX2 variant
// is selected at runtime when the CPU supports it. The two lanes are
// equivalence-tested against each other.

#include <cstddef>

namespace sqz::kern {

enum class Lane { kScalar, kAvx2 };

// Lane actually in use for the dispatched entry points below.
Lane active_lane();

// Force a lane (kScalar always works; kAvx2 throws if unsupported).
// Intended for tests and benchmarking.
void force_lane(Lane lane);
void reset_lane();

bool cpu_has_avx2();

// dst[i] = a[i] + b[i]
void add(double* dst, const double* a, const double* b, std::size_t n);
// dst[i] = a[i] * b[i]
void mul(double* dst, const double* a, const double* b, std::size_t n);
// dst[i] = k * a[i]
void scale(double* dst, const double* a, double k, std::size_t n);
// dst[i] += k * a[i]
void axpy(double* dst, const double* a, double k, std::size_t n);
// sum of a[0..n)
double sum(const double* a, std::size_t n);
// sum of a[i]^2
double sum_sq(const double* a, std::size_t n);
// acc[i] += re^2 + im^2 of interleaved complex z[2i], z[2i+1]
void accumulate_power(double* acc, const double* z, std::size_t n);

namespace scalar {
void add(double* dst, const double* a, const double* b, std::size_t n);
void mul(double* dst, const double* a, const double* b, std::size_t n);
void scale(double* dst, const double* a, double k, std::size_t n);
void axpy(double* dst, const double* a, double k, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
void accumulate_power(double* acc, const double* z, std::size_t n);
} // namespace scalar

namespace avx2 {
// Compiled with AVX2 codegen; call only when cpu_has_avx2() is true.
void add(double* dst, const double* a, const double* b, std::size_t n);
void mul(double* dst, const double* a, const double* b, std::size_t n);
void scale(double* dst, const double* a, double k, std::size_t n);
void axpy(double* dst, const double* a, double k, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
void accumulate_power(double* acc, const double* z, std::size_t n);
} // namespace avx2

} // namespace sqz::kern
