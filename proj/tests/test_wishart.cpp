#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "polsar/reference.hpp"
#include "polsar/wishart.hpp"

using namespace polsar;

TEST_CASE("log_density at the identity") {
    const WishartModel model{HermitianMatrix::identity(), 3.0};
    // 9 ln3 − 9 − ln Γ₃(3), ln Γ₃(3) = 3 ln π + ln 2
    const double expected =
        9.0 * std::log(3.0) - 9.0 - (3.0 * std::log(M_PI) + std::log(2.0));
    CHECK(log_density(model, HermitianMatrix::identity()) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log_density is maximized over sigma at sigma = Z") {
    std::mt19937_64 rng(7);
    const HermitianMatrix z = oracle::random_hpd(rng);
    const WishartModel at_z{z, 5.0};
    const double peak = log_density(at_z, z);
    for (int trial = 0; trial < 50; ++trial) {
        const HermitianMatrix delta = oracle::random_hpd(rng, 0.01);
        const HermitianMatrix shifted = convex_combination(z, delta, 0.95);
        if (shifted == z) continue;
        CHECK(log_density(WishartModel{shifted, 5.0}, z) < peak);
    }
}

TEST_CASE("density normalization by Monte-Carlo importance sampling") {
    // Z ~ W(I, 3); weights f(Z; 3, Σt)/f(Z; 3, I) must average to 1,
    // which checks the density formula and the sampler jointly.
    RandomSource rng(202);
    const WishartModel proposal{HermitianMatrix::identity(), 3.0};
    const WishartModel target{HermitianMatrix::diagonal(1.2, 1.1, 0.9), 3.0};
    const int n = 1000000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const HermitianMatrix z = sample_multilook(proposal.sigma, 3, rng);
        sum += std::exp(log_density(target, z) - log_density(proposal, z));
    }
    CHECK(sum / n == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("estimate on constant and two-point inputs") {
    const HermitianMatrix m = reference::sigma_rg();
    CHECK(estimate({m, m, m}, 4.0).sigma == m);
    const auto two = estimate({HermitianMatrix::diagonal(1, 1, 1),
                               HermitianMatrix::diagonal(3, 1, 1),
                               HermitianMatrix::diagonal(2, 1, 1)},
                              3.0);
    CHECK(two.sigma.diag(0) == Catch::Approx(2.0));
    CHECK(two.sigma.diag(1) == Catch::Approx(1.0));
}

TEST_CASE("estimate rejects tiny pixel sets") {
    const HermitianMatrix m = reference::sigma_rg();
    CHECK_THROWS_AS(estimate({m, m}, 4.0), InsufficientPixels);
}

TEST_CASE("estimate is consistent on sampled pixels") {
    RandomSource rng(31);
    const HermitianMatrix truth = reference::sigma_bs();
    std::vector<HermitianMatrix> pixels;
    pixels.reserve(100000);
    for (int i = 0; i < 100000; ++i) pixels.push_back(sample_multilook(truth, 9, rng));
    const WishartModel fitted = estimate(pixels, 9.0);
    CHECK(frobenius_distance(fitted.sigma, truth) < 0.02 * frobenius_norm(truth));
}

TEST_CASE("scattering samples have the requested complex covariance") {
    RandomSource rng(55);
    const int n = 100000;
    // Σ = I: unit variance per component, real/imag parts of variance 1/2
    double var0 = 0.0, re_var = 0.0;
    Complex mean{};
    for (int i = 0; i < n; ++i) {
        const ScatteringVector z = sample_scattering(HermitianMatrix::identity(), rng);
        var0 += std::norm(z.hh);
        re_var += z.hh.real() * z.hh.real();
        mean += z.hv;
    }
    CHECK(var0 / n == Catch::Approx(1.0).margin(0.03));
    CHECK(re_var / n == Catch::Approx(0.5).margin(0.03));
    // zero-mean within 3 standard errors (se of each part ≈ sqrt(0.5/n))
    const double se = std::sqrt(0.5 / n);
    CHECK(std::abs(mean.real() / n) < 3.0 * se);
    CHECK(std::abs(mean.imag() / n) < 3.0 * se);

    const HermitianMatrix target = reference::sigma_a1();
    double d0 = 0, d1 = 0, d2 = 0;
    Complex u01{}, u02{}, u12{};
    for (int i = 0; i < n; ++i) {
        const ScatteringVector z = sample_scattering(target, rng);
        d0 += std::norm(z.hh);
        d1 += std::norm(z.hv);
        d2 += std::norm(z.vv);
        u01 += z.hh * std::conj(z.hv);
        u02 += z.hh * std::conj(z.vv);
        u12 += z.hv * std::conj(z.vv);
    }
    const double inv_n = 1.0 / n;
    const HermitianMatrix empirical{d0 * inv_n, d1 * inv_n, d2 * inv_n,
                                    u01 * inv_n, u02 * inv_n, u12 * inv_n};
    CHECK(frobenius_distance(empirical, target) < 0.03 * frobenius_norm(target));
}

TEST_CASE("multilook samples are PD and unbiased") {
    RandomSource rng(99);
    const HermitianMatrix truth = reference::sigma_ps();
    double d0 = 0, d1 = 0, d2 = 0;
    Complex u01{}, u02{}, u12{};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const HermitianMatrix z = sample_multilook(truth, 3, rng);
        REQUIRE(is_positive_definite(z));
        d0 += z.diag(0);
        d1 += z.diag(1);
        d2 += z.diag(2);
        u01 += z.u01();
        u02 += z.u02();
        u12 += z.u12();
    }
    const double inv_n = 1.0 / n;
    const HermitianMatrix mean{d0 * inv_n, d1 * inv_n, d2 * inv_n,
                               u01 * inv_n, u02 * inv_n, u12 * inv_n};
    CHECK(frobenius_distance(mean, truth) < 0.02 * frobenius_norm(truth));
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    RandomSource a(12345), b(12345);
    const HermitianMatrix s = reference::sigma_pf();
    for (int i = 0; i < 10; ++i) {
        const HermitianMatrix za = sample_multilook(s, 4, a);
        const HermitianMatrix zb = sample_multilook(s, 4, b);
        CHECK(za == zb);  // bit-identical
    }
}

TEST_CASE("model construction guards") {
    CHECK_THROWS_AS(WishartModel(HermitianMatrix::identity(), 2.5), Error);
    CHECK_THROWS_AS(sample_multilook(HermitianMatrix::identity(), 1, *(new RandomSource(1))),
                    Error);
}

TEST_CASE("log_density invariant under pixel-set reordering") {
    RandomSource rng(3);
    std::vector<HermitianMatrix> pixels;
    for (int i = 0; i < 16; ++i) pixels.push_back(sample_multilook(reference::sigma_rg(), 9, rng));
    const HermitianMatrix probe = sample_multilook(reference::sigma_rg(), 9, rng);
    const double before = log_density(estimate(pixels, 9.0), probe);
    std::reverse(pixels.begin(), pixels.end());
    std::swap(pixels[0], pixels[7]);
    const double after = log_density(estimate(pixels, 9.0), probe);
    CHECK(before == Catch::Approx(after).epsilon(1e-12));
}
