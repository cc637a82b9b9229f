#include "sqzsim/kernels.hpp"

#include <stdexcept>

namespace sqz::kern {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {
Lane g_lane = cpu_has_avx2() ? Lane::kAvx2 : Lane::kScalar;
} // namespace

Lane active_lane() { return g_lane; }

void force_lane(Lane lane) {
    if (lane == Lane::kAvx2 && !cpu_has_avx2()) {
        throw std::runtime_error("force_lane: AVX2 not supported on this CPU");
    }
    g_lane = lane;
}

void reset_lane() { g_lane = cpu_has_avx2() ? Lane::kAvx2 : Lane::kScalar; }

void add(double* dst, const double* a, const double* b, std::size_t n) {
    g_lane == Lane::kAvx2 ? avx2::add(dst, a, b, n) : scalar::add(dst, a, b, n);
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    g_lane == Lane::kAvx2 ? avx2::mul(dst, a, b, n) : scalar::mul(dst, a, b, n);
}

void scale(double* dst, const double* a, double k, std::size_t n) {
    g_lane == Lane::kAvx2 ? avx2::scale(dst, a, k, n) : scalar::scale(dst, a, k, n);
}

void axpy(double* dst, const double* a, double k, std::size_t n) {
    g_lane == Lane::kAvx2 ? avx2::axpy(dst, a, k, n) : scalar::axpy(dst, a, k, n);
}

double sum(const double* a, std::size_t n) {
    return g_lane == Lane::kAvx2 ? avx2::sum(a, n) : scalar::sum(a, n);
}

double sum_sq(const double* a, std::size_t n) {
    return g_lane == Lane::kAvx2 ? avx2::sum_sq(a, n) : scalar::sum_sq(a, n);
}

void accumulate_power(double* acc, const double* z, std::size_t n) {
    g_lane == Lane::kAvx2 ? avx2::accumulate_power(acc, z, n) : scalar::accumulate_power(acc, z, n);
}

} // namespace sqz::kern
