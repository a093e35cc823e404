#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "polsar/kernels.hpp"

namespace polsar {

enum class MulticlassStrategy { OneAgainstAll, OneAgainstOne };

inline MulticlassStrategy strategy_from_name(const std::string& s) {
    if (s == "oaa") return MulticlassStrategy::OneAgainstAll;
    if (s == "oao") return MulticlassStrategy::OneAgainstOne;
    throw Error("unknown multiclass strategy: " + s);
}

/// Soft-margin dual solution over a precomputed kernel matrix.
struct BinarySvmModel {
    std::vector<double> alpha;
    std::vector<int> labels;                    // ±1, aligned with alpha
    std::vector<std::size_t> example_indices;   // into the full training order
    double bias = 0.0;
    double penalty = 0.0;
    std::vector<std::uint32_t> support_ids;     // region ids with alpha > 0
    bool converged = true;
    std::size_t iterations = 0;
};

struct MulticlassModel {
    MulticlassStrategy strategy = MulticlassStrategy::OneAgainstOne;
    std::vector<BinarySvmModel> binary_models;
    std::vector<int> class_list;  // sorted ascending
    MetricContext context;
    double penalty = 0.0;
};

struct ParameterGrid {
    std::vector<double> penalties;
    std::vector<double> gammas;

    static ParameterGrid defaults() {
        ParameterGrid g;
        g.penalties = {1.0, 10.0, 100.0, 1000.0, 10000.0};
        for (int i = 1; i <= 200; ++i) g.gammas.push_back(0.05 * i);
        return g;
    }
};

namespace detail {

constexpr double kSmoEps = 1e-3;
constexpr std::size_t kSmoMaxIter = 1000000;
constexpr double kSmoTau = 1e-12;

}  // namespace detail

/// SMO with maximal-violating-pair working-set selection on the dual
///   min ½ αᵀQα − eᵀα,  Q_ij = y_i y_j K_ij,  0 ≤ α ≤ C,  yᵀα = 0.
/// Ties in pair selection break to the lowest index, so training is
/// deterministic. On an indefinite Gram the pair's quadratic
/// coefficient may be non-positive; it is floored at a small positive
/// value and termination is by KKT violation only.
inline BinarySvmModel train_binary(const std::vector<std::vector<double>>& k,
                                   const std::vector<int>& y, double c,
                                   std::vector<std::size_t> example_indices = {},
                                   const std::vector<std::uint32_t>& region_ids = {}) {
    const std::size_t n = y.size();
    if (k.size() != n) throw DimensionMismatch("train_binary: kernel/label size mismatch");
    bool has_pos = false, has_neg = false;
    for (int yi : y) (yi > 0 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw OneClassOnly("train_binary: need both label signs");

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    auto q = [&](std::size_t i, std::size_t j) {
        return static_cast<double>(y[i] * y[j]) * k[i][j];
    };

    std::size_t iter = 0;
    bool converged = false;
    for (; iter < detail::kSmoMaxIter; ++iter) {
        // i maximizes −y_i G_i over I_up, j minimizes it over I_low
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const bool in_up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
            const bool in_low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
            const double v = -static_cast<double>(y[t]) * grad[t];
            if (in_up && v > g_max) {
                g_max = v;
                i = t;
            }
            if (in_low && v < g_min) {
                g_min = v;
                j = t;
            }
        }
        if (i == n || j == n || g_max - g_min <= detail::kSmoEps) {
            converged = true;
            break;
        }

        const double old_ai = alpha[i], old_aj = alpha[j];
        if (y[i] != y[j]) {
            double quad = q(i, i) + q(j, j) + 2.0 * k[i][j];
            if (quad <= 0.0) quad = detail::kSmoTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0 && alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = diff;
            } else if (diff <= 0.0 && alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0 && alpha[i] > c) {
                alpha[i] = c;
                alpha[j] = c - diff;
            } else if (diff <= 0.0 && alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2.0 * k[i][j];
            if (quad <= 0.0) quad = detail::kSmoTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c && alpha[i] > c) {
                alpha[i] = c;
                alpha[j] = sum - c;
            } else if (sum <= c && alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > c && alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = sum - c;
            } else if (sum <= c && alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * dai + q(t, j) * daj;
    }

    // bias from free support vectors, midpoint of the bounds otherwise
    double sum_free = 0.0;
    std::size_t n_free = 0;
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = static_cast<double>(y[t]) * grad[t];
        if (alpha[t] >= c) {
            if (y[t] < 0)
                ub = std::min(ub, yg);
            else
                lb = std::max(lb, yg);
        } else if (alpha[t] <= 0.0) {
            if (y[t] > 0)
                ub = std::min(ub, yg);
            else
                lb = std::max(lb, yg);
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);

    BinarySvmModel model;
    model.alpha = std::move(alpha);
    model.labels = y;
    model.bias = -rho;
    model.penalty = c;
    model.converged = converged;
    model.iterations = iter;
    if (example_indices.empty()) {
        model.example_indices.resize(n);
        for (std::size_t t = 0; t < n; ++t) model.example_indices[t] = t;
    } else {
        model.example_indices = std::move(example_indices);
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (model.alpha[t] > 0.0 && t < region_ids.size())
            model.support_ids.push_back(region_ids[t]);
    }
    return model;
}

/// Σ αᵢ yᵢ K(xᵢ, x) + bias, where full_kernel_row is indexed in the
/// full training order and the model picks its own examples.
inline double decision(const BinarySvmModel& model, const std::vector<double>& full_kernel_row) {
    double s = model.bias;
    for (std::size_t t = 0; t < model.alpha.size(); ++t) {
        const std::size_t idx = model.example_indices[t];
        if (idx >= full_kernel_row.size())
            throw DimensionMismatch("decision: kernel row too short");
        s += model.alpha[t] * static_cast<double>(model.labels[t]) * full_kernel_row[idx];
    }
    return s;
}

inline MulticlassModel train_multiclass(const GramMatrix& gram, const std::vector<int>& labels,
                                        MulticlassStrategy strategy, double penalty) {
    const std::size_t n = labels.size();
    if (gram.size() != n) throw DimensionMismatch("train_multiclass: gram/label size mismatch");
    std::vector<int> classes(labels);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.size() < 2) throw OneClassOnly("train_multiclass: need at least 2 classes");

    MulticlassModel model;
    model.strategy = strategy;
    model.class_list = classes;
    model.context = gram.context;
    model.penalty = penalty;

    if (strategy == MulticlassStrategy::OneAgainstAll) {
        for (int c : classes) {
            std::vector<int> y(n);
            for (std::size_t t = 0; t < n; ++t) y[t] = labels[t] == c ? +1 : -1;
            model.binary_models.push_back(
                train_binary(gram.values, y, penalty, {}, gram.model_ids));
        }
    } else {
        for (std::size_t a = 0; a < classes.size(); ++a) {
            for (std::size_t b = a + 1; b < classes.size(); ++b) {
                std::vector<std::size_t> idx;
                std::vector<int> y;
                for (std::size_t t = 0; t < n; ++t) {
                    if (labels[t] == classes[a]) {
                        idx.push_back(t);
                        y.push_back(+1);
                    } else if (labels[t] == classes[b]) {
                        idx.push_back(t);
                        y.push_back(-1);
                    }
                }
                std::vector<std::vector<double>> sub(idx.size(),
                                                     std::vector<double>(idx.size()));
                std::vector<std::uint32_t> sub_ids(idx.size());
                for (std::size_t u = 0; u < idx.size(); ++u) {
                    sub_ids[u] = gram.model_ids.empty() ? 0 : gram.model_ids[idx[u]];
                    for (std::size_t v = 0; v < idx.size(); ++v)
                        sub[u][v] = gram.values[idx[u]][idx[v]];
                }
                model.binary_models.push_back(train_binary(sub, y, penalty, idx, sub_ids));
            }
        }
    }
    return model;
}

/// OAA: argmax of the decision values. OAO: majority vote, ties broken
/// by summed winning decision magnitudes, then by lowest class index.
inline int predict(const MulticlassModel& model, const std::vector<double>& full_kernel_row) {
    const auto& classes = model.class_list;
    if (model.strategy == MulticlassStrategy::OneAgainstAll) {
        double best = -std::numeric_limits<double>::infinity();
        int best_class = classes.front();
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const double d = decision(model.binary_models[c], full_kernel_row);
            if (d > best) {
                best = d;
                best_class = classes[c];
            }
        }
        return best_class;
    }
    std::vector<int> votes(classes.size(), 0);
    std::vector<double> score(classes.size(), 0.0);
    std::size_t m = 0;
    for (std::size_t a = 0; a < classes.size(); ++a) {
        for (std::size_t b = a + 1; b < classes.size(); ++b, ++m) {
            const double d = decision(model.binary_models[m], full_kernel_row);
            const std::size_t winner = d >= 0.0 ? a : b;
            ++votes[winner];
            score[winner] += std::abs(d);
        }
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < classes.size(); ++c) {
        if (votes[c] > votes[best] || (votes[c] == votes[best] && score[c] > score[best]))
            best = c;
    }
    return classes[best];
}

struct GridSearchResult {
    MulticlassModel model;
    double penalty = 0.0;
    double gamma = 0.0;
    double score = -1.0;
    std::size_t failed_cells = 0;
    MetricContext context;
};

/// Exhaustive (C, γ) search. Distances are computed once by the caller;
/// each γ cell only re-exponentiates them. Selection rows are clamped
/// to τ (prediction-side pairs may exceed the training bound).
/// Ties break to smaller C, then smaller γ.
inline GridSearchResult grid_search(const std::vector<std::vector<double>>& train_dist,
                                    const std::vector<int>& train_labels,
                                    const std::vector<std::uint32_t>& train_ids,
                                    const std::vector<std::vector<double>>& selection_dist,
                                    const std::vector<int>& selection_labels,
                                    const ParameterGrid& grid, DistanceKind kind,
                                    MulticlassStrategy strategy) {
    if (grid.penalties.empty() || grid.gammas.empty()) throw Error("grid_search: empty grid");
    if (selection_dist.size() != selection_labels.size())
        throw DimensionMismatch("grid_search: selection size mismatch");
    GridSearchResult best;
    for (double gamma : grid.gammas) {
        const MetricContext ctx = context_from_distances(kind, train_dist, gamma);
        const GramMatrix gram = gram_from_distances(ctx, train_dist, train_ids);
        std::vector<std::vector<double>> rows(selection_dist.size());
        for (std::size_t s = 0; s < selection_dist.size(); ++s) {
            rows[s].resize(train_dist.size());
            for (std::size_t t = 0; t < train_dist.size(); ++t) {
                const double d = std::min(selection_dist[s][t], ctx.tau);
                rows[s][t] = std::exp(-gamma * (d + ctx.tau));
            }
        }
        for (double penalty : grid.penalties) {
            try {
                MulticlassModel model = train_multiclass(gram, train_labels, strategy, penalty);
                std::size_t correct = 0;
                for (std::size_t s = 0; s < rows.size(); ++s)
                    if (predict(model, rows[s]) == selection_labels[s]) ++correct;
                const double acc = selection_labels.empty()
                                       ? 0.0
                                       : static_cast<double>(correct) /
                                             static_cast<double>(selection_labels.size());
                const bool better =
                    acc > best.score ||
                    (acc == best.score &&
                     (penalty < best.penalty ||
                      (penalty == best.penalty && gamma < best.gamma)));
                if (better) {
                    best.model = std::move(model);
                    best.penalty = penalty;
                    best.gamma = gamma;
                    best.score = acc;
                    best.context = ctx;
                }
            } catch (const Error&) {
                ++best.failed_cells;  // cell invalid, search continues
            }
        }
    }
    if (best.score < 0.0) throw Error("grid_search: every cell failed");
    return best;
}

}  // namespace polsar
