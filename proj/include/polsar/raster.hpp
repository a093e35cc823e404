#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "polsar/hermitian.hpp"

namespace polsar {

/// Grid of per-pixel multilook covariance observations.
struct CovarianceRaster {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    double looks = 3.0;
    std::vector<HermitianMatrix> pixels;  // row-major, width*height

    const HermitianMatrix& at(std::uint32_t x, std::uint32_t y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    HermitianMatrix& at(std::uint32_t x, std::uint32_t y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
};

/// Region partition of the grid; region ids form the contiguous range
/// 0..region_count-1 and every pixel belongs to exactly one region.
struct SegmentationMap {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t region_count = 0;
    std::vector<std::uint32_t> region_ids;  // row-major

    std::uint32_t at(std::uint32_t x, std::uint32_t y) const {
        return region_ids[static_cast<std::size_t>(y) * width + x];
    }

    void validate() const {
        if (region_ids.size() != static_cast<std::size_t>(width) * height)
            throw DimensionMismatch("SegmentationMap: pixel count mismatch");
        std::vector<bool> seen(region_count, false);
        for (std::uint32_t id : region_ids) {
            if (id >= region_count) throw Error("SegmentationMap: region id out of range");
            seen[id] = true;
        }
        for (std::uint32_t r = 0; r < region_count; ++r)
            if (!seen[r]) throw Error("SegmentationMap: empty region id " + std::to_string(r));
    }
};

enum class SampleRole { Train, Test, None };

struct LabeledEntry {
    std::uint32_t region_id = 0;
    int class_id = 0;
    SampleRole role = SampleRole::None;
};

/// Region → class assignments with train/test roles. No region appears
/// twice; every class carries at least one training region.
struct LabeledDataset {
    std::vector<LabeledEntry> entries;

    void validate() const {
        std::vector<std::uint32_t> ids;
        for (const auto& e : entries) ids.push_back(e.region_id);
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw Error("LabeledDataset: duplicate region id");
        std::vector<int> classes;
        std::vector<int> trained;
        for (const auto& e : entries) {
            classes.push_back(e.class_id);
            if (e.role == SampleRole::Train) trained.push_back(e.class_id);
        }
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        for (int c : classes) {
            if (std::find(trained.begin(), trained.end(), c) == trained.end())
                throw EmptyClass("LabeledDataset: class " + std::to_string(c) +
                                 " has no training region");
        }
    }
};

}  // namespace polsar
