#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "polsar/wishart.hpp"

namespace polsar {

enum class DistanceFamily { Bhattacharyya, KullbackLeibler, Renyi, Hellinger, ChiSquare };

/// Distance selector. Rényi carries its order 0 < β < 1.
struct DistanceKind {
    DistanceFamily family = DistanceFamily::Bhattacharyya;
    double beta = 0.9;

    static DistanceKind bhattacharyya() { return {DistanceFamily::Bhattacharyya, 0.0}; }
    static DistanceKind kullback_leibler() { return {DistanceFamily::KullbackLeibler, 0.0}; }
    static DistanceKind renyi(double beta = 0.9) {
        if (!(beta > 0.0 && beta < 1.0)) throw Error("Renyi order must satisfy 0 < beta < 1");
        return {DistanceFamily::Renyi, beta};
    }
    static DistanceKind hellinger() { return {DistanceFamily::Hellinger, 0.0}; }
    static DistanceKind chi_square() { return {DistanceFamily::ChiSquare, 0.0}; }

    std::string name() const {
        switch (family) {
            case DistanceFamily::Bhattacharyya: return "bhattacharyya";
            case DistanceFamily::KullbackLeibler: return "kl";
            case DistanceFamily::Renyi: return "renyi";
            case DistanceFamily::Hellinger: return "hellinger";
            case DistanceFamily::ChiSquare: return "chisquare";
        }
        return "?";
    }
};

inline DistanceKind distance_kind_from_name(const std::string& s, double beta = 0.9) {
    if (s == "bhattacharyya" || s == "b") return DistanceKind::bhattacharyya();
    if (s == "kl" || s == "kullback-leibler" || s == "k") return DistanceKind::kullback_leibler();
    if (s == "renyi" || s == "r") return DistanceKind::renyi(beta);
    if (s == "hellinger" || s == "h") return DistanceKind::hellinger();
    if (s == "chisquare" || s == "chi-square" || s == "c") return DistanceKind::chi_square();
    throw Error("unknown distance kind: " + s);
}

namespace detail {

inline HermitianMatrix sum(const HermitianMatrix& a, const HermitianMatrix& b) {
    return {a.diag(0) + b.diag(0), a.diag(1) + b.diag(1), a.diag(2) + b.diag(2),
            a.u01() + b.u01(),     a.u02() + b.u02(),     a.u12() + b.u12()};
}

inline HermitianMatrix lincomb(double wa, const HermitianMatrix& a, double wb,
                               const HermitianMatrix& b) {
    return {wa * a.diag(0) + wb * b.diag(0), wa * a.diag(1) + wb * b.diag(1),
            wa * a.diag(2) + wb * b.diag(2), wa * a.u01() + wb * b.u01(),
            wa * a.u02() + wb * b.u02(),     wa * a.u12() + wb * b.u12()};
}

inline double log_sum_exp(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace detail

/// Closed-form stochastic distance between two scaled complex Wishart
/// models sharing the looks value N. Log arguments are determinants of
/// HPD matrices except in the Chi-Square case, where the inner matrices
/// may be indefinite and the determinant magnitude is used; computation
/// stays in log space and overflow is reported, not masked.
inline double distance(DistanceKind kind, const WishartModel& a, const WishartModel& b) {
    if (a.looks != b.looks)
        throw LooksMismatch("distance: models have different looks values");
    // Exact zero on equal parameters protects the metricization identity.
    if (a.sigma == b.sigma) return 0.0;

    const double n = a.looks;
    const HermitianMatrix& s1 = a.sigma;
    const HermitianMatrix& s2 = b.sigma;
    const double l1 = std::log(determinant(s1));
    const double l2 = std::log(determinant(s2));
    const HermitianMatrix inv1 = inverse(s1);
    const HermitianMatrix inv2 = inverse(s2);
    constexpr double log2 = 0.6931471805599453094;

    double value = 0.0;
    switch (kind.family) {
        case DistanceFamily::Bhattacharyya: {
            // |((Σ1⁻¹+Σ2⁻¹)/2)⁻¹| = 2³ / |Σ1⁻¹+Σ2⁻¹|
            const double log_det_inv_sum = std::log(determinant(detail::sum(inv1, inv2)));
            value = n * (0.5 * (l1 + l2) - (3.0 * log2 - log_det_inv_sum));
            break;
        }
        case DistanceFamily::KullbackLeibler: {
            value = n * (0.5 * (trace_product(inv1, s2) + trace_product(inv2, s1)) - 3.0);
            break;
        }
        case DistanceFamily::Renyi: {
            const double beta = kind.beta;
            const double t1 =
                n * (-beta * l1 + (beta - 1.0) * l2 -
                     std::log(determinant(detail::lincomb(beta, inv1, 1.0 - beta, inv2))));
            const double t2 =
                n * (-beta * l2 + (beta - 1.0) * l1 -
                     std::log(determinant(detail::lincomb(beta, inv2, 1.0 - beta, inv1))));
            value = log2 / (1.0 - beta) + detail::log_sum_exp(t1, t2) / (beta - 1.0);
            break;
        }
        case DistanceFamily::Hellinger: {
            const double log_det_inv_sum = std::log(determinant(detail::sum(inv1, inv2)));
            const double log_ratio = 3.0 * log2 - log_det_inv_sum - 0.5 * (l1 + l2);
            value = 1.0 - std::exp(n * log_ratio);
            break;
        }
        case DistanceFamily::ChiSquare: {
            const double det_a = determinant(detail::lincomb(2.0, inv2, -1.0, inv1));
            const double det_b = determinant(detail::lincomb(2.0, inv1, -1.0, inv2));
            if (det_a == 0.0 || det_b == 0.0)
                throw SingularMatrix("chi-square: inner matrix singular");
            const double ta = n * (l1 - 2.0 * l2 - std::log(std::abs(det_a)));
            const double tb = n * (l2 - 2.0 * l1 - std::log(std::abs(det_b)));
            value = std::exp(ta) + std::exp(tb) - 2.0;
            break;
        }
    }
    if (!std::isfinite(value)) throw NonFiniteResult("distance: non-finite result");
    return value;
}

/// All pairwise distances; diagonal exactly 0, symmetric by computing
/// only the upper triangle.
inline std::vector<std::vector<double>> distance_matrix(DistanceKind kind,
                                                        const std::vector<WishartModel>& models) {
    const std::size_t n = models.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            try {
                out[i][j] = out[j][i] = distance(kind, models[i], models[j]);
            } catch (const Error& e) {
                throw Error("distance_matrix: pair (" + std::to_string(i) + "," +
                            std::to_string(j) + "): " + e.what());
            }
        }
    }
    return out;
}

}  // namespace polsar
