#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "polsar/distances.hpp"

namespace polsar {

/// Everything needed to evaluate the τ-shifted metric and the radial
/// basis kernel between region models.
struct MetricContext {
    DistanceKind kind;
    double tau = 0.0;    // upper bound on the pairwise distances in scope
    double gamma = 1.0;  // kernel flexibility

    MetricContext() = default;
    MetricContext(DistanceKind k, double t, double g) : kind(k), tau(t), gamma(g) {
        if (!(tau > 0.0)) throw Error("MetricContext: tau must be positive");
        if (!(gamma > 0.0)) throw Error("MetricContext: gamma must be positive");
    }
};

struct GramMatrix {
    std::vector<std::vector<double>> values;
    MetricContext context;
    std::vector<std::uint32_t> model_ids;

    std::size_t size() const { return values.size(); }
};

/// τ-shifted metric m(R_u, R_v): 0 on the same region, D + τ otherwise.
/// Identity is keyed on region identity, not model equality, so two
/// distinct regions with equal models map to τ.
///
/// When clamp_to_tau is set, a distance above τ is clamped instead of
/// rejected; prediction-time pairs were not in scope when τ was built
/// and must not abort the run.
inline double metricize(const MetricContext& ctx, const WishartModel& a, const WishartModel& b,
                        bool same_region, bool clamp_to_tau = false) {
    if (same_region) return 0.0;
    double d = distance(ctx.kind, a, b);
    if (d > ctx.tau) {
        if (!clamp_to_tau)
            throw TauViolation("metricize: distance " + std::to_string(d) + " exceeds tau " +
                               std::to_string(ctx.tau));
        d = ctx.tau;
    }
    return d + ctx.tau;
}

/// K(R_u, R_v) = exp(−γ m(R_u, R_v)); 1 iff the same region, in (0, 1].
inline double kernel(const MetricContext& ctx, const WishartModel& a, const WishartModel& b,
                     bool same_region, bool clamp_to_tau = false) {
    return std::exp(-ctx.gamma * metricize(ctx, a, b, same_region, clamp_to_tau));
}

/// τ = max pairwise distance over the training models, times a 1.05
/// safety factor absorbing estimation jitter between runs.
inline MetricContext build_context(DistanceKind kind, const std::vector<WishartModel>& models,
                                   double gamma) {
    if (models.size() < 2) throw Error("build_context: need at least 2 models");
    double max_d = 0.0;
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = i + 1; j < models.size(); ++j)
            max_d = std::max(max_d, distance(kind, models[i], models[j]));
    if (max_d <= 0.0) max_d = 1.0;  // all models identical; any positive bound works
    return MetricContext{kind, 1.05 * max_d, gamma};
}

/// Build a MetricContext from distances that are already available.
inline MetricContext context_from_distances(DistanceKind kind,
                                            const std::vector<std::vector<double>>& dist,
                                            double gamma) {
    double max_d = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        for (std::size_t j = i + 1; j < dist.size(); ++j) max_d = std::max(max_d, dist[i][j]);
    if (max_d <= 0.0) max_d = 1.0;
    return MetricContext{kind, 1.05 * max_d, gamma};
}

inline GramMatrix build_gram(const MetricContext& ctx, const std::vector<WishartModel>& models,
                             const std::vector<std::uint32_t>& region_ids) {
    if (models.size() != region_ids.size())
        throw DimensionMismatch("build_gram: models/region_ids length mismatch");
    const std::size_t n = models.size();
    GramMatrix g;
    g.context = ctx;
    g.model_ids = region_ids;
    g.values.assign(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            try {
                const double k = kernel(ctx, models[i], models[j], false);
                g.values[i][j] = g.values[j][i] = k;
            } catch (const TauViolation& e) {
                throw TauViolation("build_gram: pair (" + std::to_string(region_ids[i]) + "," +
                                   std::to_string(region_ids[j]) + "): " + e.what());
            }
        }
    }
    return g;
}

/// Gram matrix from a precomputed distance matrix; avoids recomputing
/// distances across γ sweeps.
inline GramMatrix gram_from_distances(const MetricContext& ctx,
                                      const std::vector<std::vector<double>>& dist,
                                      const std::vector<std::uint32_t>& region_ids) {
    const std::size_t n = dist.size();
    if (n != region_ids.size())
        throw DimensionMismatch("gram_from_distances: size mismatch");
    GramMatrix g;
    g.context = ctx;
    g.model_ids = region_ids;
    g.values.assign(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::min(dist[i][j], ctx.tau);
            g.values[i][j] = g.values[j][i] = std::exp(-ctx.gamma * (d + ctx.tau));
        }
    return g;
}

/// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi sweeps.
/// Diagnostic only: the τ-shifted kernel is not guaranteed PSD and
/// negative values are expected on some training sets.
inline double min_eigenvalue(const std::vector<std::vector<double>>& m) {
    std::vector<std::vector<double>> a = m;
    const std::size_t n = a.size();
    if (n == 0) throw Error("min_eigenvalue: empty matrix");
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0][0];
    for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, a[i][i]);
    return mn;
}

}  // namespace polsar
