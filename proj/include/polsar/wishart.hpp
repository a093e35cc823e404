#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "polsar/hermitian.hpp"

namespace polsar {

using RandomSource = std::mt19937_64;

/// Scaled complex Wishart model: mean covariance Σ plus the equivalent
/// number of looks N (N ≥ 3 so Γ₃(N) is defined).
struct WishartModel {
    HermitianMatrix sigma;
    double looks = 3.0;

    WishartModel() = default;
    WishartModel(HermitianMatrix s, double n) : sigma(s), looks(n) {
        if (!(looks >= 3.0)) throw Error("WishartModel: looks must be >= 3");
        if (!is_positive_definite(sigma))
            throw Error("WishartModel: sigma must be positive definite");
    }
};

struct ScatteringVector {
    Complex hh, hv, vv;
};

/// ln Γ₃(N) = 3 ln π + Σ_{i=0}^{2} ln Γ(N − i)
inline double log_multigamma3(double n) {
    constexpr double log_pi = 1.1447298858494001741;
    return 3.0 * log_pi + std::lgamma(n) + std::lgamma(n - 1.0) + std::lgamma(n - 2.0);
}

/// ln f(Z; N, Σ) of the scaled complex Wishart density.
inline double log_density(const WishartModel& model, const HermitianMatrix& z) {
    const double n = model.looks;
    const double log_det_z = std::log(determinant(z));
    const double log_det_sigma = std::log(determinant(model.sigma));
    return 3.0 * n * std::log(n) + (n - 3.0) * log_det_z -
           n * trace_product(inverse(model.sigma), z) - n * log_det_sigma - log_multigamma3(n);
}

/// ML estimate of Σ: the entrywise mean of the pixel matrices.
inline WishartModel estimate(const std::vector<HermitianMatrix>& pixels, double looks) {
    if (pixels.size() < 3) throw InsufficientPixels("estimate: fewer than 3 pixels");
    double d0 = 0, d1 = 0, d2 = 0;
    Complex u01{}, u02{}, u12{};
    for (const auto& p : pixels) {
        d0 += p.diag(0);
        d1 += p.diag(1);
        d2 += p.diag(2);
        u01 += p.u01();
        u02 += p.u02();
        u12 += p.u12();
    }
    const double inv_n = 1.0 / static_cast<double>(pixels.size());
    HermitianMatrix mean{d0 * inv_n, d1 * inv_n, d2 * inv_n, u01 * inv_n, u02 * inv_n,
                         u12 * inv_n};
    if (!is_positive_definite(mean))
        throw SingularEstimate("estimate: mean matrix is not positive definite");
    return WishartModel{mean, looks};
}

namespace detail {

/// Lower Cholesky factor of the 6x6 real Gaussian covariance (1/2)Θ,
/// Θ = [[Re Σ, −Im Σ], [Im Σ, Re Σ]].
inline std::array<std::array<double, 6>, 6> goodman_cholesky(const HermitianMatrix& sigma) {
    std::array<std::array<double, 6>, 6> cov{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Complex s = sigma.at(i, j);
            cov[i][j] = 0.5 * s.real();
            cov[i + 3][j + 3] = 0.5 * s.real();
            cov[i][j + 3] = -0.5 * s.imag();
            cov[i + 3][j] = 0.5 * s.imag();
        }
    }
    std::array<std::array<double, 6>, 6> chol{};
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = cov[i][j];
            for (int k = 0; k < j; ++k) s -= chol[i][k] * chol[j][k];
            if (i == j) {
                if (s <= 0.0)
                    throw SingularMatrix("sample_scattering: Gaussian covariance not PD");
                chol[i][i] = std::sqrt(s);
            } else {
                chol[i][j] = s / chol[j][j];
            }
        }
    }
    return chol;
}

}  // namespace detail

/// One scattering vector z with E[z z*ᵀ] = Σ (Goodman construction).
inline ScatteringVector sample_scattering(const HermitianMatrix& sigma, RandomSource& rng) {
    const auto chol = detail::goodman_cholesky(sigma);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<double, 6> w{};
    for (double& x : w) x = gauss(rng);
    std::array<double, 6> z{};
    for (int i = 0; i < 6; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j) s += chol[i][j] * w[j];
        z[i] = s;
    }
    return {Complex{z[0], z[3]}, Complex{z[1], z[4]}, Complex{z[2], z[5]}};
}

/// N-look covariance observation: (1/N) Σ_ℓ z_ℓ z_ℓ*ᵀ.
inline HermitianMatrix sample_multilook(const HermitianMatrix& sigma, int looks,
                                        RandomSource& rng) {
    if (looks < 3) throw Error("sample_multilook: looks must be >= 3");
    const auto chol = detail::goodman_cholesky(sigma);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double d0 = 0, d1 = 0, d2 = 0;
    Complex u01{}, u02{}, u12{};
    std::array<double, 6> w{}, zr{};
    for (int l = 0; l < looks; ++l) {
        for (double& x : w) x = gauss(rng);
        for (int i = 0; i < 6; ++i) {
            double s = 0.0;
            for (int j = 0; j <= i; ++j) s += chol[i][j] * w[j];
            zr[i] = s;
        }
        const Complex z0{zr[0], zr[3]}, z1{zr[1], zr[4]}, z2{zr[2], zr[5]};
        d0 += std::norm(z0);
        d1 += std::norm(z1);
        d2 += std::norm(z2);
        u01 += z0 * std::conj(z1);
        u02 += z0 * std::conj(z2);
        u12 += z1 * std::conj(z2);
    }
    const double inv_n = 1.0 / looks;
    return {d0 * inv_n, d1 * inv_n, d2 * inv_n, u01 * inv_n, u02 * inv_n, u12 * inv_n};
}

}  // namespace polsar
