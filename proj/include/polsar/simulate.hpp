#pragma once

#include <array>
#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "polsar/eval.hpp"

namespace polsar {

/// Phantom layout: six class blocks in 2 rows × 3 columns, each block
/// partitioned into rectangles of different dimension by seeded
/// recursive splitting.
struct PhantomSpec {
    std::uint32_t block_size = 512;
    std::uint32_t segments_per_block = 44;
    std::uint64_t seed = 1;

    static constexpr std::uint32_t kBlocks = 6;
    static constexpr std::uint32_t kBlockCols = 3;
    static constexpr std::uint32_t kBlockRows = 2;
};

struct PerturbationSpec {
    double theta = 0.1;
    int looks = 9;
    std::uint32_t per_block_trained_segments = 11;
};

struct Phantom {
    SegmentationMap seg;
    std::vector<std::uint32_t> block_of_region;  // region id → block 0..5
};

struct SimulatedScene {
    CovarianceRaster raster;
    SegmentationMap seg;
    std::vector<std::uint32_t> block_of_region;
    LabeledDataset labels_six;    // scenario 1: one class per block
    LabeledDataset labels_three;  // scenario 2: blocks (1,4) (2,5) (3,6) merged
};

namespace detail {

struct Rect {
    std::uint32_t x, y, w, h;
    std::uint64_t area() const { return static_cast<std::uint64_t>(w) * h; }
};

}  // namespace detail

/// Deterministic partition: repeatedly split the largest remaining
/// rectangle at a seeded position in [0.35, 0.65] of its longer side.
inline Phantom build_phantom(const PhantomSpec& spec) {
    if (spec.block_size < 32) throw InfeasibleSpec("build_phantom: block_size < 32");
    if (spec.segments_per_block < 4) throw InfeasibleSpec("build_phantom: segments < 4");
    if (static_cast<std::uint64_t>(spec.block_size) * spec.block_size <
        static_cast<std::uint64_t>(spec.segments_per_block) * 9)
        throw InfeasibleSpec("build_phantom: blocks too small for the segment count");

    RandomSource rng(spec.seed);
    std::uniform_real_distribution<double> frac(0.35, 0.65);

    Phantom out;
    out.seg.width = PhantomSpec::kBlockCols * spec.block_size;
    out.seg.height = PhantomSpec::kBlockRows * spec.block_size;
    out.seg.region_count = PhantomSpec::kBlocks * spec.segments_per_block;
    out.seg.region_ids.assign(static_cast<std::size_t>(out.seg.width) * out.seg.height, 0);
    out.block_of_region.resize(out.seg.region_count);

    for (std::uint32_t block = 0; block < PhantomSpec::kBlocks; ++block) {
        const std::uint32_t bx = (block % PhantomSpec::kBlockCols) * spec.block_size;
        const std::uint32_t by = (block / PhantomSpec::kBlockCols) * spec.block_size;
        std::vector<detail::Rect> rects{{bx, by, spec.block_size, spec.block_size}};
        while (rects.size() < spec.segments_per_block) {
            std::size_t largest = 0;
            for (std::size_t i = 1; i < rects.size(); ++i)
                if (rects[i].area() > rects[largest].area()) largest = i;
            detail::Rect r = rects[largest];
            const double f = frac(rng);
            if (r.w >= r.h) {
                auto cut = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(f * r.w));
                cut = std::min(cut, r.w - 1);
                rects[largest] = {r.x, r.y, cut, r.h};
                rects.push_back({r.x + cut, r.y, r.w - cut, r.h});
            } else {
                auto cut = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(f * r.h));
                cut = std::min(cut, r.h - 1);
                rects[largest] = {r.x, r.y, r.w, cut};
                rects.push_back({r.x, r.y + cut, r.w, r.h - cut});
            }
        }
        for (std::uint32_t s = 0; s < spec.segments_per_block; ++s) {
            const std::uint32_t region = block * spec.segments_per_block + s;
            out.block_of_region[region] = block;
            const detail::Rect& r = rects[s];
            for (std::uint32_t yy = r.y; yy < r.y + r.h; ++yy)
                for (std::uint32_t xx = r.x; xx < r.x + r.w; ++xx)
                    out.seg.region_ids[static_cast<std::size_t>(yy) * out.seg.width + xx] =
                        region;
        }
    }
    out.seg.validate();
    return out;
}

/// Σ_ℓ = base + Υ with Υ the rank-1 outer product of a real vector
/// whose component i is uniform on (−aᵢ, aᵢ), aᵢ = √(θ·Īᵢᵢ·2√L).
/// PD is preserved (PD + PSD).
inline HermitianMatrix perturb_covariance(const HermitianMatrix& base,
                                          const PerturbationSpec& spec, RandomSource& rng) {
    if (spec.theta == 0.0) return base;
    std::array<double, 3> v{};
    for (int i = 0; i < 3; ++i) {
        const double a = std::sqrt(spec.theta * base.diag(i) * 2.0 * std::sqrt(spec.looks));
        std::uniform_real_distribution<double> u(-a, a);
        v[static_cast<std::size_t>(i)] = u(rng);
    }
    return {base.diag(0) + v[0] * v[0], base.diag(1) + v[1] * v[1], base.diag(2) + v[2] * v[2],
            base.u01() + Complex{v[0] * v[1], 0.0}, base.u02() + Complex{v[0] * v[2], 0.0},
            base.u12() + Complex{v[1] * v[2], 0.0}};
}

/// Per block: draw one perturbed model per segment, fill each segment
/// with multilook samples from its own model, then pick the training
/// segments (seeded, without replacement). Both scenario label sets
/// share the selection.
inline SimulatedScene simulate_scene(const PhantomSpec& phantom,
                                     const std::array<HermitianMatrix, 6>& classes,
                                     const PerturbationSpec& pert, std::uint64_t seed) {
    for (const auto& c : classes)
        if (!is_positive_definite(c)) throw Error("simulate_scene: class matrix not PD");

    SimulatedScene scene;
    Phantom ph = build_phantom(phantom);
    scene.seg = std::move(ph.seg);
    scene.block_of_region = std::move(ph.block_of_region);

    RandomSource rng(seed);
    std::vector<HermitianMatrix> region_sigma(scene.seg.region_count);
    for (std::uint32_t r = 0; r < scene.seg.region_count; ++r)
        region_sigma[r] = perturb_covariance(classes[scene.block_of_region[r]], pert, rng);

    scene.raster.width = scene.seg.width;
    scene.raster.height = scene.seg.height;
    scene.raster.looks = pert.looks;
    scene.raster.pixels.resize(static_cast<std::size_t>(scene.seg.width) * scene.seg.height,
                               HermitianMatrix::identity());
    for (std::size_t p = 0; p < scene.raster.pixels.size(); ++p)
        scene.raster.pixels[p] =
            sample_multilook(region_sigma[scene.seg.region_ids[p]], pert.looks, rng);

    // Training segments per block, seeded without replacement.
    const std::uint32_t spb = phantom.segments_per_block;
    for (std::uint32_t block = 0; block < PhantomSpec::kBlocks; ++block) {
        std::vector<std::uint32_t> order(spb);
        std::iota(order.begin(), order.end(), 0u);
        for (std::uint32_t i = spb - 1; i > 0; --i) {
            std::uniform_int_distribution<std::uint32_t> pick(0, i);
            std::swap(order[i], order[pick(rng)]);
        }
        for (std::uint32_t s = 0; s < spb; ++s) {
            const std::uint32_t region = block * spb + order[s];
            const SampleRole role =
                s < pert.per_block_trained_segments ? SampleRole::Train : SampleRole::Test;
            scene.labels_six.entries.push_back({region, static_cast<int>(block), role});
            scene.labels_three.entries.push_back({region, static_cast<int>(block % 3), role});
        }
    }
    return scene;
}

struct ExperimentRow {
    std::size_t image = 0;
    std::string method;    // "msdc", "svm-oaa", "svm-oao"
    std::string kind;
    std::string scenario;  // "six", "three"
    bool ok = false;
    double accuracy = 0.0;
    double kappa_value = 0.0;
    double seconds = 0.0;
    std::string error;
};

struct ExperimentConfig {
    std::size_t n_images = 10;
    PhantomSpec phantom;
    PerturbationSpec pert;
    std::array<HermitianMatrix, 6> classes;
    std::vector<DistanceKind> kinds;
    bool run_msdc = true;
    std::vector<MulticlassStrategy> strategies;
    ParameterGrid grid = ParameterGrid::defaults();
    bool paper_protocol = true;
    std::uint64_t master_seed = 1;
};

/// Desk-scale defaults: 128-pixel blocks, 16 segments, 4 trained per
/// block, 10 images.
inline ExperimentConfig desk_scale_config(const std::array<HermitianMatrix, 6>& classes) {
    ExperimentConfig cfg;
    cfg.classes = classes;
    cfg.phantom.block_size = 128;
    cfg.phantom.segments_per_block = 16;
    cfg.pert.per_block_trained_segments = 4;
    cfg.n_images = 10;
    cfg.kinds = {DistanceKind::bhattacharyya(), DistanceKind::kullback_leibler(),
                 DistanceKind::renyi(0.9), DistanceKind::hellinger()};
    cfg.strategies = {MulticlassStrategy::OneAgainstAll, MulticlassStrategy::OneAgainstOne};
    return cfg;
}

namespace detail {

inline double region_accuracy(const ClassificationMap& map, const LabeledDataset& truth) {
    return overall_accuracy(confusion_from_map(map, truth));
}

}  // namespace detail

/// Paper-protocol sweep: per image, every (method × kind × strategy ×
/// scenario) combination with accuracy and wall-clock time. Per-cell
/// failures are recorded and the run continues.
inline std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_images < 2) throw Error("run_experiment: need at least 2 images");
    std::vector<ExperimentRow> rows;
    for (std::size_t img = 0; img < cfg.n_images; ++img) {
        PhantomSpec phantom = cfg.phantom;
        phantom.seed = cfg.master_seed + 7919 * img;
        const std::uint64_t scene_seed = cfg.master_seed * 1000003 + img;
        const SimulatedScene scene =
            simulate_scene(phantom, cfg.classes, cfg.pert, scene_seed);
        const RegionModels regions = estimate_region_models(scene.raster, scene.seg);

        const std::array<std::pair<std::string, const LabeledDataset*>, 2> scenarios{
            std::pair<std::string, const LabeledDataset*>{"six", &scene.labels_six},
            std::pair<std::string, const LabeledDataset*>{"three", &scene.labels_three}};

        for (const auto& [scenario_name, labels] : scenarios) {
            for (const DistanceKind& kind : cfg.kinds) {
                if (cfg.run_msdc) {
                    ExperimentRow row{img, "msdc", kind.name(), scenario_name};
                    const auto t0 = std::chrono::steady_clock::now();
                    try {
                        const auto class_models =
                            estimate_class_models(scene.raster, scene.seg, *labels);
                        const ClassificationMap map =
                            msdc_classify(regions, class_models, kind);
                        row.accuracy = detail::region_accuracy(map, *labels);
                        row.ok = true;
                    } catch (const Error& e) {
                        row.error = e.what();
                    }
                    row.seconds =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    rows.push_back(row);
                }
                for (MulticlassStrategy strategy : cfg.strategies) {
                    ExperimentRow row{
                        img,
                        strategy == MulticlassStrategy::OneAgainstAll ? "svm-oaa" : "svm-oao",
                        kind.name(), scenario_name};
                    const auto t0 = std::chrono::steady_clock::now();
                    try {
                        SvmClassifyOptions opts;
                        opts.kind = kind;
                        opts.strategy = strategy;
                        opts.grid = cfg.grid;
                        opts.paper_protocol = cfg.paper_protocol;
                        opts.seed = scene_seed;
                        const SvmClassifyResult res =
                            svm_classify(scene.raster, scene.seg, *labels, opts);
                        row.accuracy = detail::region_accuracy(res.map, *labels);
                        row.ok = true;
                    } catch (const Error& e) {
                        row.error = e.what();
                    }
                    row.seconds =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

}  // namespace polsar
