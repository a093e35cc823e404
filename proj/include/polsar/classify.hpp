#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polsar/raster.hpp"
#include "polsar/svm.hpp"

namespace polsar {

enum class RegionStatus { Ok, Degenerate, Unclassifiable };

struct ClassificationMap {
    std::vector<int> class_ids;            // per region; meaningless unless status Ok
    std::vector<RegionStatus> status;      // per region

    std::size_t size() const { return class_ids.size(); }
};

struct RegionModels {
    std::vector<std::optional<WishartModel>> models;  // nullopt for degenerate regions
    std::vector<std::uint32_t> pixel_counts;
};

/// One Wishart model per region. Regions with fewer than 3 pixels or a
/// singular mean are flagged degenerate and excluded downstream.
inline RegionModels estimate_region_models(const CovarianceRaster& raster,
                                           const SegmentationMap& seg) {
    if (raster.width != seg.width || raster.height != seg.height)
        throw DimensionMismatch("estimate_region_models: raster/segmentation size mismatch");
    std::vector<std::vector<HermitianMatrix>> buckets(seg.region_count);
    for (std::size_t p = 0; p < raster.pixels.size(); ++p)
        buckets[seg.region_ids[p]].push_back(raster.pixels[p]);
    RegionModels out;
    out.models.resize(seg.region_count);
    out.pixel_counts.resize(seg.region_count);
    for (std::uint32_t r = 0; r < seg.region_count; ++r) {
        out.pixel_counts[r] = static_cast<std::uint32_t>(buckets[r].size());
        try {
            out.models[r] = estimate(buckets[r], raster.looks);
        } catch (const InsufficientPixels&) {
            out.models[r] = std::nullopt;
        } catch (const SingularEstimate&) {
            out.models[r] = std::nullopt;
        }
    }
    return out;
}

/// One model per class, pooling ALL pixels of the class's training
/// regions (not an average of region models).
inline std::map<int, WishartModel> estimate_class_models(const CovarianceRaster& raster,
                                                         const SegmentationMap& seg,
                                                         const LabeledDataset& data) {
    if (raster.width != seg.width || raster.height != seg.height)
        throw DimensionMismatch("estimate_class_models: raster/segmentation size mismatch");
    std::map<int, std::vector<HermitianMatrix>> pooled;
    std::map<std::uint32_t, int> train_class;
    for (const auto& e : data.entries)
        if (e.role == SampleRole::Train) train_class[e.region_id] = e.class_id;
    for (std::size_t p = 0; p < raster.pixels.size(); ++p) {
        auto it = train_class.find(seg.region_ids[p]);
        if (it != train_class.end()) pooled[it->second].push_back(raster.pixels[p]);
    }
    std::map<int, WishartModel> out;
    for (auto& [cls, pixels] : pooled) {
        if (pixels.empty()) throw EmptyClass("estimate_class_models: empty class");
        out.emplace(cls, estimate(pixels, raster.looks));
    }
    if (out.empty()) throw EmptyClass("estimate_class_models: no training pixels");
    return out;
}

/// Minimum stochastic distance rule: each region gets the class whose
/// model is closest; ties break to the lowest class index. Regions
/// whose every distance evaluation fails are marked unclassifiable.
inline ClassificationMap msdc_classify(const RegionModels& regions,
                                       const std::map<int, WishartModel>& class_models,
                                       DistanceKind kind) {
    ClassificationMap out;
    out.class_ids.assign(regions.models.size(), -1);
    out.status.assign(regions.models.size(), RegionStatus::Ok);
    for (std::size_t r = 0; r < regions.models.size(); ++r) {
        if (!regions.models[r]) {
            out.status[r] = RegionStatus::Degenerate;
            continue;
        }
        bool any = false;
        double best_d = 0.0;
        int best_c = -1;
        for (const auto& [cls, model] : class_models) {
            try {
                const double d = distance(kind, *regions.models[r], model);
                if (!any || d < best_d) {
                    any = true;
                    best_d = d;
                    best_c = cls;
                }
            } catch (const Error&) {
                // per-class failure (Chi-Square); remaining classes still compete
            }
        }
        if (!any) {
            out.status[r] = RegionStatus::Unclassifiable;
        } else {
            out.class_ids[r] = best_c;
        }
    }
    return out;
}

struct SvmClassifyOptions {
    DistanceKind kind;
    MulticlassStrategy strategy = MulticlassStrategy::OneAgainstOne;
    ParameterGrid grid = ParameterGrid::defaults();
    // The source protocol tunes on the testing regions; the default
    // carves a validation subset out of the training regions instead.
    bool paper_protocol = false;
    std::uint64_t seed = 1;
};

struct SvmClassifyResult {
    ClassificationMap map;
    GridSearchResult search;
    double gram_min_eigenvalue = 0.0;
};

/// Full SVM pipeline: region models, distance cache over train ∪ query
/// models, grid search, then prediction of every non-training region.
inline SvmClassifyResult svm_classify(const CovarianceRaster& raster, const SegmentationMap& seg,
                                      const LabeledDataset& data,
                                      const SvmClassifyOptions& opts) {
    data.validate();
    const RegionModels regions = estimate_region_models(raster, seg);

    std::vector<std::size_t> train_regions;
    std::map<std::uint32_t, int> region_class;
    std::map<std::uint32_t, SampleRole> region_role;
    for (const auto& e : data.entries) {
        region_class[e.region_id] = e.class_id;
        region_role[e.region_id] = e.role;
        if (e.role == SampleRole::Train && e.region_id < regions.models.size() &&
            regions.models[e.region_id])
            train_regions.push_back(e.region_id);
    }
    if (train_regions.size() < 2) throw Error("svm_classify: not enough training regions");

    std::vector<WishartModel> train_models;
    std::vector<int> train_labels;
    std::vector<std::uint32_t> train_ids;
    for (std::size_t r : train_regions) {
        train_models.push_back(*regions.models[r]);
        train_labels.push_back(region_class[static_cast<std::uint32_t>(r)]);
        train_ids.push_back(static_cast<std::uint32_t>(r));
    }

    // Distance cache: train×train plus every-region×train, computed once.
    const std::vector<std::vector<double>> train_dist =
        distance_matrix(opts.kind, train_models);
    std::vector<std::vector<double>> region_dist(regions.models.size());
    for (std::size_t r = 0; r < regions.models.size(); ++r) {
        if (!regions.models[r]) continue;
        region_dist[r].resize(train_models.size());
        for (std::size_t t = 0; t < train_models.size(); ++t) {
            region_dist[r][t] = train_ids[t] == r
                                    ? 0.0
                                    : distance(opts.kind, *regions.models[r], train_models[t]);
        }
    }

    // Selection set for tuning.
    std::vector<std::vector<double>> sel_dist;
    std::vector<int> sel_labels;
    std::vector<int> fit_labels = train_labels;
    std::vector<std::vector<double>> fit_dist = train_dist;
    std::vector<std::uint32_t> fit_ids = train_ids;
    if (opts.paper_protocol) {
        for (const auto& e : data.entries) {
            if (e.role != SampleRole::Test || e.region_id >= regions.models.size() ||
                !regions.models[e.region_id])
                continue;
            sel_dist.push_back(region_dist[e.region_id]);
            sel_labels.push_back(e.class_id);
        }
    } else {
        // Hold out every third training region per class, keeping at
        // least one training region per class.
        std::map<int, std::vector<std::size_t>> per_class;
        for (std::size_t t = 0; t < train_labels.size(); ++t)
            per_class[train_labels[t]].push_back(t);
        std::vector<bool> held(train_labels.size(), false);
        for (auto& [cls, idx] : per_class) {
            if (idx.size() < 2) continue;
            for (std::size_t k = 2; k < idx.size(); k += 3) held[idx[k]] = true;
            if (idx.size() >= 2 && std::none_of(idx.begin(), idx.end(),
                                                [&](std::size_t t) { return held[t]; }))
                held[idx.back()] = true;
        }
        std::vector<std::size_t> keep;
        for (std::size_t t = 0; t < train_labels.size(); ++t)
            if (!held[t]) keep.push_back(t);
        fit_labels.clear();
        fit_ids.clear();
        fit_dist.assign(keep.size(), std::vector<double>(keep.size()));
        for (std::size_t u = 0; u < keep.size(); ++u) {
            fit_labels.push_back(train_labels[keep[u]]);
            fit_ids.push_back(train_ids[keep[u]]);
            for (std::size_t v = 0; v < keep.size(); ++v)
                fit_dist[u][v] = train_dist[keep[u]][keep[v]];
        }
        for (std::size_t t = 0; t < train_labels.size(); ++t) {
            if (!held[t]) continue;
            std::vector<double> row(keep.size());
            for (std::size_t v = 0; v < keep.size(); ++v) row[v] = train_dist[t][keep[v]];
            sel_dist.push_back(std::move(row));
            sel_labels.push_back(train_labels[t]);
        }
        if (sel_labels.empty()) {
            // degenerate split (e.g. one region per class): tune on training fit
            for (std::size_t t = 0; t < fit_labels.size(); ++t) {
                sel_dist.push_back(fit_dist[t]);
                sel_labels.push_back(fit_labels[t]);
            }
        }
    }

    GridSearchResult search = grid_search(fit_dist, fit_labels, fit_ids, sel_dist, sel_labels,
                                          opts.grid, opts.kind, opts.strategy);

    // Retrain on all training regions at the selected (C, γ).
    const MetricContext ctx = context_from_distances(opts.kind, train_dist, search.gamma);
    const GramMatrix gram = gram_from_distances(ctx, train_dist, train_ids);
    MulticlassModel final_model =
        train_multiclass(gram, train_labels, opts.strategy, search.penalty);

    SvmClassifyResult result;
    result.gram_min_eigenvalue = min_eigenvalue(gram.values);
    result.search = std::move(search);
    result.search.model = final_model;
    result.search.context = ctx;

    result.map.class_ids.assign(regions.models.size(), -1);
    result.map.status.assign(regions.models.size(), RegionStatus::Ok);
    for (std::size_t r = 0; r < regions.models.size(); ++r) {
        if (!regions.models[r]) {
            result.map.status[r] = RegionStatus::Degenerate;
            continue;
        }
        std::vector<double> row(train_models.size());
        bool self = false;
        for (std::size_t t = 0; t < train_models.size(); ++t) {
            const bool same = train_ids[t] == r;
            self = self || same;
            const double d = std::min(region_dist[r][t], ctx.tau);
            row[t] = same ? 1.0 : std::exp(-ctx.gamma * (d + ctx.tau));
        }
        (void)self;
        result.map.class_ids[r] = predict(final_model, row);
    }
    return result;
}

}  // namespace polsar
