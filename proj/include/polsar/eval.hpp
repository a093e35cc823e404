#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "polsar/classify.hpp"

namespace polsar {

/// c × c counts, rows = reference, columns = predicted.
struct ConfusionMatrix {
    std::vector<int> class_list;
    std::vector<std::vector<std::uint64_t>> counts;

    explicit ConfusionMatrix(std::vector<int> classes)
        : class_list(std::move(classes)),
          counts(class_list.size(), std::vector<std::uint64_t>(class_list.size(), 0)) {}

    std::size_t index_of(int cls) const {
        for (std::size_t i = 0; i < class_list.size(); ++i)
            if (class_list[i] == cls) return i;
        throw Error("ConfusionMatrix: unknown class " + std::to_string(cls));
    }

    void add(int reference, int predicted, std::uint64_t n = 1) {
        counts[index_of(reference)][index_of(predicted)] += n;
    }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& row : counts)
            for (std::uint64_t v : row) t += v;
        return t;
    }
};

inline double overall_accuracy(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (total == 0) throw Error("overall_accuracy: empty confusion matrix");
    std::uint64_t diag = 0;
    for (std::size_t i = 0; i < cm.counts.size(); ++i) diag += cm.counts[i][i];
    return static_cast<double>(diag) / static_cast<double>(total);
}

/// κ = (p_o − p_e)/(1 − p_e) with the delta-method variance of the
/// accuracy-assessment literature:
///   var = [θ1(1−θ1)/(1−θ2)² + 2(1−θ1)(2θ1θ2−θ3)/(1−θ2)³
///          + (1−θ1)²(θ4−4θ2²)/(1−θ2)⁴] / n
/// where θ1 = p_o, θ2 = p_e, θ3 = Σᵢ pᵢᵢ(pᵢ₊+p₊ᵢ), θ4 = Σᵢⱼ pᵢⱼ(pⱼ₊+p₊ᵢ)².
inline std::pair<double, double> kappa(const ConfusionMatrix& cm) {
    const double n = static_cast<double>(cm.total());
    if (n == 0) throw Error("kappa: empty confusion matrix");
    const std::size_t c = cm.counts.size();
    std::vector<double> row_sum(c, 0.0), col_sum(c, 0.0);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            row_sum[i] += static_cast<double>(cm.counts[i][j]);
            col_sum[j] += static_cast<double>(cm.counts[i][j]);
        }
    double theta1 = 0.0, theta2 = 0.0, theta3 = 0.0, theta4 = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        const double pii = static_cast<double>(cm.counts[i][i]) / n;
        const double pi_dot = row_sum[i] / n;
        const double pdot_i = col_sum[i] / n;
        theta1 += pii;
        theta2 += pi_dot * pdot_i;
        theta3 += pii * (pi_dot + pdot_i);
    }
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const double pij = static_cast<double>(cm.counts[i][j]) / n;
            const double s = row_sum[j] / n + col_sum[i] / n;
            theta4 += pij * s * s;
        }
    if (theta2 >= 1.0) throw DegenerateMarginals("kappa: chance agreement is 1");
    const double k = (theta1 - theta2) / (1.0 - theta2);
    const double om2 = 1.0 - theta2;
    const double variance =
        (theta1 * (1.0 - theta1) / (om2 * om2) +
         2.0 * (1.0 - theta1) * (2.0 * theta1 * theta2 - theta3) / (om2 * om2 * om2) +
         (1.0 - theta1) * (1.0 - theta1) * (theta4 - 4.0 * theta2 * theta2) /
             (om2 * om2 * om2 * om2)) /
        n;
    return {k, variance};
}

namespace detail {

/// Regularized incomplete beta I_x(a, b) by the standard continued
/// fraction, accurate to ~1e-12.
inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
        b * std::log(1.0 - x);
    auto cont_frac = [](double aa, double bb, double xx) {
        const double eps = 1e-15, fpmin = 1e-300;
        const double qab = aa + bb, qap = aa + 1.0, qam = aa - 1.0;
        double c = 1.0, d = 1.0 - qab * xx / qap;
        if (std::abs(d) < fpmin) d = fpmin;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 300; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < fpmin) d = fpmin;
            c = 1.0 + num / c;
            if (std::abs(c) < fpmin) c = fpmin;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < fpmin) d = fpmin;
            c = 1.0 + num / c;
            if (std::abs(c) < fpmin) c = fpmin;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < eps) break;
        }
        return h;
    };
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(ln_front) * cont_frac(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log(1.0 - x) + a * std::log(x)) *
                     cont_frac(b, a, 1.0 - x) / b;
}

/// Two-sided p for a Student-t statistic with nu degrees of freedom.
inline double t_two_sided_p(double t, double nu) {
    if (t == 0.0) return 1.0;
    return incomplete_beta(0.5 * nu, 0.5, nu / (nu + t * t));
}

inline double normal_two_sided_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

}  // namespace detail

/// Two-sided pooled-variance two-sample t-test. Equal constant vectors
/// give p = 1 exactly. When paired is set, a paired t-test over the
/// same image index is used instead (vectors must have equal length).
inline double compare_accuracies(const std::vector<double>& a, const std::vector<double>& b,
                                 bool paired = false) {
    if (a.size() < 2 || b.size() < 2)
        throw InsufficientSamples("compare_accuracies: need at least 2 samples per vector");
    if (paired) {
        if (a.size() != b.size())
            throw DimensionMismatch("compare_accuracies: paired vectors differ in length");
        std::vector<double> d(a.size());
        double mean = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            d[i] = a[i] - b[i];
            mean += d[i];
        }
        mean /= static_cast<double>(d.size());
        double var = 0.0;
        for (double x : d) var += (x - mean) * (x - mean);
        var /= static_cast<double>(d.size() - 1);
        if (var == 0.0) return mean == 0.0 ? 1.0 : 0.0;
        const double t = mean / std::sqrt(var / static_cast<double>(d.size()));
        return detail::t_two_sided_p(t, static_cast<double>(d.size() - 1));
    }
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double ma = 0.0, mb = 0.0;
    for (double x : a) ma += x;
    for (double x : b) mb += x;
    ma /= na;
    mb /= nb;
    double sa = 0.0, sb = 0.0;
    for (double x : a) sa += (x - ma) * (x - ma);
    for (double x : b) sb += (x - mb) * (x - mb);
    const double pooled = (sa + sb) / (na + nb - 2.0);
    if (pooled == 0.0) return ma == mb ? 1.0 : 0.0;
    const double t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    return detail::t_two_sided_p(t, na + nb - 2.0);
}

/// Two-sided normal test on z = (κ₁ − κ₂)/√(v₁ + v₂).
inline double compare_kappas(double k1, double v1, double k2, double v2) {
    if (!(v1 > 0.0) || !(v2 > 0.0)) throw Error("compare_kappas: variances must be positive");
    if (k1 == k2) return 1.0;
    return detail::normal_two_sided_p((k1 - k2) / std::sqrt(v1 + v2));
}

/// Region-unit confusion matrix from a classification map, excluding
/// training regions.
inline ConfusionMatrix confusion_from_map(const ClassificationMap& map,
                                          const LabeledDataset& truth) {
    std::vector<int> classes;
    for (const auto& e : truth.entries) classes.push_back(e.class_id);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    ConfusionMatrix cm(classes);
    for (const auto& e : truth.entries) {
        if (e.role == SampleRole::Train) continue;
        if (e.region_id >= map.size()) continue;
        if (map.status[e.region_id] != RegionStatus::Ok) continue;
        cm.add(e.class_id, map.class_ids[e.region_id]);
    }
    return cm;
}

/// Pixel-unit confusion matrix with 1-in-3 spatial subsampling in both
/// directions, excluding pixels of training regions.
inline ConfusionMatrix pixel_confusion_from_map(const ClassificationMap& map,
                                                const SegmentationMap& seg,
                                                const LabeledDataset& truth, int stride = 3) {
    std::vector<int> classes;
    std::map<std::uint32_t, const LabeledEntry*> by_region;
    for (const auto& e : truth.entries) {
        classes.push_back(e.class_id);
        by_region[e.region_id] = &e;
    }
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    ConfusionMatrix cm(classes);
    for (std::uint32_t y = 0; y < seg.height; y += static_cast<std::uint32_t>(stride)) {
        for (std::uint32_t x = 0; x < seg.width; x += static_cast<std::uint32_t>(stride)) {
            const std::uint32_t r = seg.at(x, y);
            auto it = by_region.find(r);
            if (it == by_region.end() || it->second->role == SampleRole::Train) continue;
            if (r >= map.size() || map.status[r] != RegionStatus::Ok) continue;
            cm.add(it->second->class_id, map.class_ids[r]);
        }
    }
    return cm;
}

}  // namespace polsar
