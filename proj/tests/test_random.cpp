#include <doctest.h>

#include <cmath>
#include <set>

#include "synq/random.hpp"

using namespace synq;

TEST_CASE("xorshift streams are deterministic per seed") {
    xorshift a(42), b(42), c(43);
    bool diverged = false;
    for (int i = 0; i < 1000; ++i) {
        uint32_t va = a();
        CHECK(va == b());
        if (va != c()) diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("uniform01 stays in (0, 1]") {
    xorshift rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        double u = rng.uniform01();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("derive_seed separates streams") {
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(123, i));
    CHECK(seen.size() == 10000);
}

TEST_CASE("binomial boundary cases") {
    xorshift rng(1);
    CHECK(binomial(100, 0.0, rng) == 0);
    CHECK(binomial(100, 1.0, rng) == 100);
    CHECK(binomial(0, 0.5, rng) == 0);
}

TEST_CASE("binomial mean and variance within 4 sigma") {
    xorshift rng(99);
    const uint32_t m = 500;
    const double p = 0.12;
    const int trials = 20000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < trials; ++i) {
        uint32_t k = binomial(m, p, rng);
        REQUIRE(k <= m);
        sum += k;
        sum2 += double(k) * k;
    }
    double mean = sum / trials;
    double var = sum2 / trials - mean * mean;
    double expect_mean = m * p;
    double sigma_mean = std::sqrt(m * p * (1 - p) / trials);
    CHECK(std::abs(mean - expect_mean) < 4 * sigma_mean);
    // variance of the sample variance ~ 2*var^2/n for near-normal counts
    double expect_var = m * p * (1 - p);
    CHECK(std::abs(var - expect_var) < 4 * expect_var * std::sqrt(2.0 / trials));
}
