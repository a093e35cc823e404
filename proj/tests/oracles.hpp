// Test-only oracles, independent of the implementation paths they
// check: full 3x3 complex matrix arithmetic, adaptive quadrature of the
// one-dimensional divergence integrals, and a long-double erf series.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "polsar/distances.hpp"
#include "polsar/hermitian.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Mat3 = std::array<std::array<Complex, 3>, 3>;

inline Mat3 to_full(const polsar::HermitianMatrix& m) {
    Mat3 f{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) f[i][j] = m.at(i, j);
    return f;
}

inline Mat3 multiply(const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Complex trace(const Mat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

// Cofactor expansion along the first row.
inline Complex det_cofactor(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Random HPD matrix as V V*ᵀ + εI from random complex V.
inline polsar::HermitianMatrix random_hpd(std::mt19937_64& rng, double eps = 0.1) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat3 v{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i][j] = Complex{g(rng), g(rng)};
    Mat3 h{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) h[i][j] += v[i][k] * std::conj(v[j][k]);
    return {h[0][0].real() + eps, h[1][1].real() + eps, h[2][2].real() + eps,
            h[0][1], h[0][2], h[1][2]};
}

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    if (depth > 60) throw QuadratureFailure("adaptive quadrature did not converge");
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

template <typename F>
double integrate(const F& f, double a, double b, double tol = 1e-9) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, detail::simpson(f, a, b, fa, fm, fb),
                                    tol, 0);
}

// ∫₀^∞ by doubling panels until the increment vanishes.
template <typename F>
double integrate_half_line(const F& f, double scale, double tol = 1e-9) {
    double total = integrate(f, 1e-12, scale, tol);
    double lo = scale;
    for (int k = 0; k < 40; ++k) {
        const double hi = 2.0 * lo;
        const double part = integrate(f, lo, hi, tol);
        total += part;
        if (std::abs(part) < 0.1 * tol && k > 2) return total;
        lo = hi;
    }
    throw QuadratureFailure("half-line integral tail did not vanish");
}

// log density of the 1-dimensional scaled Wishart (Gamma, shape N,
// mean sigma).
inline double gamma_log_density(double z, double n, double sigma) {
    return n * std::log(n) + (n - 1.0) * std::log(z) - n * z / sigma - n * std::log(sigma) -
           std::lgamma(n);
}

/// Symmetrized h-φ divergence between two 1-dimensional scaled Wishart
/// laws, by adaptive quadrature of the defining integrals.
inline double hphi_1d(polsar::DistanceKind kind, double sigma1, double sigma2, double looks,
                      double tol = 1e-9) {
    if (!(sigma1 > 0.0 && sigma2 > 0.0)) throw QuadratureFailure("need positive scalars");
    const double scale = std::max(sigma1, sigma2) * (1.0 + looks);
    auto lf1 = [&](double z) { return gamma_log_density(z, looks, sigma1); };
    auto lf2 = [&](double z) { return gamma_log_density(z, looks, sigma2); };
    using polsar::DistanceFamily;
    switch (kind.family) {
        case DistanceFamily::Bhattacharyya: {
            const double rho = integrate_half_line(
                [&](double z) { return std::exp(0.5 * (lf1(z) + lf2(z))); }, scale, tol);
            return -std::log(rho);
        }
        case DistanceFamily::Hellinger: {
            const double rho = integrate_half_line(
                [&](double z) { return std::exp(0.5 * (lf1(z) + lf2(z))); }, scale, tol);
            return 1.0 - rho;
        }
        case DistanceFamily::KullbackLeibler: {
            return 0.5 * integrate_half_line(
                             [&](double z) {
                                 const double a = lf1(z), b = lf2(z);
                                 return (std::exp(a) - std::exp(b)) * (a - b);
                             },
                             scale, tol);
        }
        case DistanceFamily::Renyi: {
            const double beta = kind.beta;
            const double i12 = integrate_half_line(
                [&](double z) { return std::exp(beta * lf1(z) + (1.0 - beta) * lf2(z)); },
                scale, tol);
            const double i21 = integrate_half_line(
                [&](double z) { return std::exp(beta * lf2(z) + (1.0 - beta) * lf1(z)); },
                scale, tol);
            return std::log(0.5 * (i12 + i21)) / (beta - 1.0);
        }
        case DistanceFamily::ChiSquare: {
            const double i12 = integrate_half_line(
                [&](double z) { return std::exp(2.0 * lf1(z) - lf2(z)); }, scale, tol);
            const double i21 = integrate_half_line(
                [&](double z) { return std::exp(2.0 * lf2(z) - lf1(z)); }, scale, tol);
            return i12 + i21 - 2.0;
        }
    }
    throw QuadratureFailure("unknown kind");
}

// erfc by Taylor series (small arguments) or Lentz continued fraction
// (large), in long double.
inline long double erfc_series(long double x) {
    const bool negative = x < 0.0L;
    const long double ax = std::abs(x);
    long double result;
    if (ax < 2.0L) {
        // erf(x) = 2/√π Σ (−1)ᵏ x^{2k+1} / (k!(2k+1))
        long double term = ax, sum = ax;
        for (int k = 1; k < 200; ++k) {
            term *= -ax * ax / k;
            const long double add = term / (2 * k + 1);
            sum += add;
            if (std::abs(add) < 1e-25L * std::abs(sum)) break;
        }
        const long double two_over_sqrt_pi = 1.12837916709551257389615890312154517L;
        result = 1.0L - two_over_sqrt_pi * sum;
    } else {
        // erfc(x) = Γ(1/2, x²)/√π via the upper incomplete gamma
        // continued fraction (modified Lentz).
        const long double a = 0.5L;
        const long double x2 = ax * ax;
        long double b = x2 + 1.0L - a;
        long double c = 1e30L;
        long double d = 1.0L / b;
        long double h = d;
        for (int k = 1; k < 300; ++k) {
            const long double an = -k * (k - a);
            b += 2.0L;
            d = an * d + b;
            if (std::abs(d) < 1e-30L) d = 1e-30L;
            c = b + an / c;
            if (std::abs(c) < 1e-30L) c = 1e-30L;
            d = 1.0L / d;
            const long double del = d * c;
            h *= del;
            if (std::abs(del - 1.0L) < 1e-25L) break;
        }
        const long double sqrt_pi = 1.77245385090551602729816748334114518L;
        result = std::exp(-x2) * std::pow(x2, a) * h / sqrt_pi;
    }
    return negative ? 2.0L - result : result;
}

inline double normal_two_sided_p(double z) {
    return static_cast<double>(erfc_series(std::abs(z) / std::sqrt(2.0L)));
}

}  // namespace oracle
