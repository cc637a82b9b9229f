#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sqzsim/kernels.hpp"

using namespace sqz;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -10.0,
                               double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

} // namespace

TEST_CASE("scalar kernels match naive loops") {
    std::mt19937_64 rng(42);
    auto a = random_vec(rng, 257);
    auto b = random_vec(rng, 257);
    std::vector<double> dst(257);

    kern::scalar::add(dst.data(), a.data(), b.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(dst[i] == a[i] + b[i]);

    kern::scalar::mul(dst.data(), a.data(), b.data(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(dst[i] == a[i] * b[i]);

    kern::scalar::scale(dst.data(), a.data(), 2.5, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(dst[i] == 2.5 * a[i]);

    auto acc = b;
    kern::scalar::axpy(acc.data(), a.data(), -1.5, a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(acc[i] == doctest::Approx(b[i] - 1.5 * a[i]).epsilon(1e-15));

    double s = 0.0;
    for (double x : a) s += x;
    CHECK(kern::scalar::sum(a.data(), a.size()) == doctest::Approx(s).epsilon(1e-13));

    double sq = 0.0;
    for (double x : a) sq += x * x;
    CHECK(kern::scalar::sum_sq(a.data(), a.size()) == doctest::Approx(sq).epsilon(1e-13));
}

TEST_CASE("accumulate_power adds interleaved complex magnitudes") {
    std::mt19937_64 rng(7);
    const std::size_t n = 129;
    auto z = random_vec(rng, 2 * n);
    std::vector<double> acc(n, 1.0);
    kern::scalar::accumulate_power(acc.data(), z.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = z[2 * i], im = z[2 * i + 1];
        CHECK(acc[i] == doctest::Approx(1.0 + re * re + im * im).epsilon(1e-15));
    }
}

TEST_CASE("avx2 lane is bit-identical to scalar lane") {
    if (!kern::cpu_has_avx2()) return; // nothing to compare on this host
    std::mt19937_64 rng(1234);
    // Sizes straddling the 4-wide vector width, including empty and tails.
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3}, std::size_t{4},
                          std::size_t{5}, std::size_t{7}, std::size_t{8}, std::size_t{63},
                          std::size_t{64}, std::size_t{1000}, std::size_t{4096},
                          std::size_t{4097}}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        std::vector<double> d1(n), d2(n);

        kern::scalar::add(d1.data(), a.data(), b.data(), n);
        kern::avx2::add(d2.data(), a.data(), b.data(), n);
        CHECK(d1 == d2);

        kern::scalar::mul(d1.data(), a.data(), b.data(), n);
        kern::avx2::mul(d2.data(), a.data(), b.data(), n);
        CHECK(d1 == d2);

        kern::scalar::scale(d1.data(), a.data(), 3.75, n);
        kern::avx2::scale(d2.data(), a.data(), 3.75, n);
        CHECK(d1 == d2);

        auto acc1 = b, acc2 = b;
        kern::scalar::axpy(acc1.data(), a.data(), -0.625, n);
        kern::avx2::axpy(acc2.data(), a.data(), -0.625, n);
        CHECK(acc1 == acc2);

        CHECK(kern::scalar::sum(a.data(), n) == kern::avx2::sum(a.data(), n));
        CHECK(kern::scalar::sum_sq(a.data(), n) == kern::avx2::sum_sq(a.data(), n));

        if (n % 2 == 0) {
            std::vector<double> p1(n / 2, 0.5), p2(n / 2, 0.5);
            kern::scalar::accumulate_power(p1.data(), a.data(), n / 2);
            kern::avx2::accumulate_power(p2.data(), a.data(), n / 2);
            CHECK(p1 == p2);
        }
    }
}

TEST_CASE("avx2 equivalence holds over many random shapes") {
    if (!kern::cpu_has_avx2()) return;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> len(0, 513);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = len(rng);
        auto a = random_vec(rng, n, -1e3, 1e3);
        CHECK(kern::scalar::sum_sq(a.data(), n) == kern::avx2::sum_sq(a.data(), n));
    }
}

TEST_CASE("forced lane selection is honored and reversible") {
    kern::force_lane(kern::Lane::kScalar);
    CHECK(kern::active_lane() == kern::Lane::kScalar);

    const double a[4] = {1, 2, 3, 4};
    CHECK(kern::sum(a, 4) == 10.0);

    if (kern::cpu_has_avx2()) {
        kern::force_lane(kern::Lane::kAvx2);
        CHECK(kern::active_lane() == kern::Lane::kAvx2);
        CHECK(kern::sum(a, 4) == 10.0);
    } else {
        CHECK_THROWS(kern::force_lane(kern::Lane::kAvx2));
    }

    kern::reset_lane();
    CHECK(kern::active_lane() == (kern::cpu_has_avx2() ? kern::Lane::kAvx2 : kern::Lane::kScalar));
}

TEST_CASE("dispatched entry points agree across lanes") {
    std::mt19937_64 rng(5);
    auto a = random_vec(rng, 777);
    auto b = random_vec(rng, 777);
    std::vector<double> d_scalar(a.size()), d_active(a.size());

    kern::force_lane(kern::Lane::kScalar);
    kern::mul(d_scalar.data(), a.data(), b.data(), a.size());
    const double s_scalar = kern::sum_sq(a.data(), a.size());

    kern::reset_lane();
    kern::mul(d_active.data(), a.data(), b.data(), a.size());
    const double s_active = kern::sum_sq(a.data(), a.size());

    CHECK(d_scalar == d_active);
    CHECK(s_scalar == s_active);
}
