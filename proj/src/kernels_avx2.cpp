#include "sqzsim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SQZ_X86 1
#include <immintrin.h>
#else
#define SQZ_X86 0
#endif

namespace sqz::kern::avx2 {

#if SQZ_X86

void add(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void scale(double* dst, const double* a, double k, std::size_t n) {
    const __m256d vk = _mm256_set1_pd(k);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(vk, _mm256_loadu_pd(a + i)));
    }
    for (; i < n; ++i) dst[i] = k * a[i];
}

void axpy(double* dst, const double* a, double k, std::size_t n) {
    // mul+add rather than fused multiply-add: rounding must match the scalar lane.
    const __m256d vk = _mm256_set1_pd(k);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(vk, _mm256_loadu_pd(a + i));
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), prod));
    }
    for (; i < n; ++i) dst[i] += k * a[i];
}

namespace {
// Reduce lanes in the same association as the scalar reference:
// ((l0 + l2) + (l1 + l3)).
inline double reduce_like_scalar(__m256d v) {
    alignas(32) double l[4];
    _mm256_store_pd(l, v);
    return (l[0] + l[2]) + (l[1] + l[3]);
}
} // namespace

double sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double tail = 0;
    for (; i < n; ++i) tail += a[i];
    return reduce_like_scalar(acc) + tail;
}

double sum_sq(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double tail = 0;
    for (; i < n; ++i) tail += a[i] * a[i];
    return reduce_like_scalar(acc) + tail;
}

void accumulate_power(double* acc, const double* z, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d z0 = _mm256_loadu_pd(z + 2 * i);     // re0 im0 re1 im1
        const __m256d z1 = _mm256_loadu_pd(z + 2 * i + 4); // re2 im2 re3 im3
        const __m256d sq0 = _mm256_mul_pd(z0, z0);
        const __m256d sq1 = _mm256_mul_pd(z1, z1);
        // re^2+im^2 per complex value, then restore element order.
        __m256d p = _mm256_hadd_pd(sq0, sq1);              // p0 p2 p1 p3
        p = _mm256_permute4x64_pd(p, _MM_SHUFFLE(3, 1, 2, 0));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), p));
    }
    for (; i < n; ++i) {
        const double re = z[2 * i];
        const double im = z[2 * i + 1];
        acc[i] += re * re + im * im;
    }
}

#else // !SQZ_X86: delegate so the symbol set is identical on every platform

void add(double* dst, const double* a, const double* b, std::size_t n) { scalar::add(dst, a, b, n); }
void mul(double* dst, const double* a, const double* b, std::size_t n) { scalar::mul(dst, a, b, n); }
void scale(double* dst, const double* a, double k, std::size_t n) { scalar::scale(dst, a, k, n); }
void axpy(double* dst, const double* a, double k, std::size_t n) { scalar::axpy(dst, a, k, n); }
double sum(const double* a, std::size_t n) { return scalar::sum(a, n); }
double sum_sq(const double* a, std::size_t n) { return scalar::sum_sq(a, n); }
void accumulate_power(double* acc, const double* z, std::size_t n) { scalar::accumulate_power(acc, z, n); }

#endif

} // namespace sqz::kern::avx2
