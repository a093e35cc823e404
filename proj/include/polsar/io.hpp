#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "polsar/classify.hpp"
#include "polsar/raster.hpp"

namespace polsar::io {

namespace detail {

template <typename T>
void write_raw(std::ostream& os, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    os.write(buf, sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    char buf[sizeof(T)];
    is.read(buf, sizeof(T));
    if (!is) throw IoError("unexpected end of file");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

inline void expect_magic(std::istream& is, const char* magic) {
    char buf[4];
    is.read(buf, 4);
    if (!is || std::memcmp(buf, magic, 4) != 0)
        throw IoError(std::string("bad magic, expected ") + magic);
}

}  // namespace detail

// ---- covariance raster (PCOV) ----
// magic "PCOV", version u8 = 1, width u32, height u32, looks f64, then
// row-major pixels of 9 little-endian f64:
// [Zhh, Zhv, Zvv, Re Zhhhv, Im Zhhhv, Re Zhhvv, Im Zhhvv, Re Zhvvv, Im Zhvvv]

inline void save_raster(const CovarianceRaster& raster, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write("PCOV", 4);
    detail::write_raw<std::uint8_t>(os, 1);
    detail::write_raw<std::uint32_t>(os, raster.width);
    detail::write_raw<std::uint32_t>(os, raster.height);
    detail::write_raw<double>(os, raster.looks);
    for (const auto& m : raster.pixels) {
        detail::write_raw<double>(os, m.diag(0));
        detail::write_raw<double>(os, m.diag(1));
        detail::write_raw<double>(os, m.diag(2));
        detail::write_raw<double>(os, m.u01().real());
        detail::write_raw<double>(os, m.u01().imag());
        detail::write_raw<double>(os, m.u02().real());
        detail::write_raw<double>(os, m.u02().imag());
        detail::write_raw<double>(os, m.u12().real());
        detail::write_raw<double>(os, m.u12().imag());
    }
    if (!os) throw IoError("write failed: " + path);
}

inline CovarianceRaster load_raster(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    detail::expect_magic(is, "PCOV");
    const auto version = detail::read_raw<std::uint8_t>(is);
    if (version != 1) throw IoError("unsupported PCOV version");
    CovarianceRaster raster;
    raster.width = detail::read_raw<std::uint32_t>(is);
    raster.height = detail::read_raw<std::uint32_t>(is);
    raster.looks = detail::read_raw<double>(is);
    const std::size_t n = static_cast<std::size_t>(raster.width) * raster.height;
    raster.pixels.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double d0 = detail::read_raw<double>(is);
        const double d1 = detail::read_raw<double>(is);
        const double d2 = detail::read_raw<double>(is);
        if (d0 < 0.0 || d1 < 0.0 || d2 < 0.0)
            throw IoError("PCOV: negative diagonal intensity");
        const double re01 = detail::read_raw<double>(is);
        const double im01 = detail::read_raw<double>(is);
        const double re02 = detail::read_raw<double>(is);
        const double im02 = detail::read_raw<double>(is);
        const double re12 = detail::read_raw<double>(is);
        const double im12 = detail::read_raw<double>(is);
        raster.pixels.emplace_back(d0, d1, d2, Complex{re01, im01}, Complex{re02, im02},
                                   Complex{re12, im12});
    }
    return raster;
}

// ---- segmentation (PSEG) ----

inline void save_segmentation(const SegmentationMap& seg, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write("PSEG", 4);
    detail::write_raw<std::uint32_t>(os, seg.width);
    detail::write_raw<std::uint32_t>(os, seg.height);
    for (std::uint32_t id : seg.region_ids) detail::write_raw<std::uint32_t>(os, id);
    if (!os) throw IoError("write failed: " + path);
}

inline SegmentationMap load_segmentation(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    detail::expect_magic(is, "PSEG");
    SegmentationMap seg;
    seg.width = detail::read_raw<std::uint32_t>(is);
    seg.height = detail::read_raw<std::uint32_t>(is);
    const std::size_t n = static_cast<std::size_t>(seg.width) * seg.height;
    seg.region_ids.reserve(n);
    std::uint32_t max_id = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const auto id = detail::read_raw<std::uint32_t>(is);
        max_id = std::max(max_id, id);
        seg.region_ids.push_back(id);
    }
    seg.region_count = n > 0 ? max_id + 1 : 0;
    seg.validate();
    return seg;
}

// ---- labels (CSV: region_id,class_id,role) ----

inline std::string role_name(SampleRole role) {
    switch (role) {
        case SampleRole::Train: return "train";
        case SampleRole::Test: return "test";
        case SampleRole::None: return "none";
    }
    return "none";
}

inline SampleRole role_from_name(const std::string& s) {
    if (s == "train") return SampleRole::Train;
    if (s == "test") return SampleRole::Test;
    if (s == "none") return SampleRole::None;
    throw IoError("unknown sample role: " + s);
}

inline void save_labels(const LabeledDataset& data, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "region_id,class_id,role\n";
    for (const auto& e : data.entries)
        os << e.region_id << ',' << e.class_id << ',' << role_name(e.role) << '\n';
    if (!os) throw IoError("write failed: " + path);
}

inline LabeledDataset load_labels(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line) || line != "region_id,class_id,role")
        throw IoError("bad label file header: " + path);
    LabeledDataset data;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw IoError("bad label line: " + line);
        data.entries.push_back({static_cast<std::uint32_t>(std::stoul(a)), std::stoi(b),
                                role_from_name(c)});
    }
    data.validate();
    return data;
}

// ---- classification map (CSV: region_id,class_id,status) ----

inline std::string status_name(RegionStatus s) {
    switch (s) {
        case RegionStatus::Ok: return "ok";
        case RegionStatus::Degenerate: return "degenerate";
        case RegionStatus::Unclassifiable: return "unclassifiable";
    }
    return "ok";
}

inline RegionStatus status_from_name(const std::string& s) {
    if (s == "ok") return RegionStatus::Ok;
    if (s == "degenerate") return RegionStatus::Degenerate;
    if (s == "unclassifiable") return RegionStatus::Unclassifiable;
    throw IoError("unknown region status: " + s);
}

inline void save_map(const ClassificationMap& map, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "region_id,class_id,status\n";
    for (std::size_t r = 0; r < map.size(); ++r)
        os << r << ',' << map.class_ids[r] << ',' << status_name(map.status[r]) << '\n';
    if (!os) throw IoError("write failed: " + path);
}

inline ClassificationMap load_map(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line) || line != "region_id,class_id,status")
        throw IoError("bad map file header: " + path);
    ClassificationMap map;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            throw IoError("bad map line: " + line);
        map.class_ids.push_back(std::stoi(b));
        map.status.push_back(status_from_name(c));
    }
    return map;
}

// ---- Gram cache (WGRM) ----
// magic "WGRM", version u8, kind tag u8, β f64 (Rényi only), τ f64,
// γ f64, count u32, region ids, then the packed upper triangle
// (diagonal included) as f64, little-endian.

inline void save_gram(const GramMatrix& gram, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write("WGRM", 4);
    detail::write_raw<std::uint8_t>(os, 1);
    detail::write_raw<std::uint8_t>(os,
                                    static_cast<std::uint8_t>(gram.context.kind.family));
    if (gram.context.kind.family == DistanceFamily::Renyi)
        detail::write_raw<double>(os, gram.context.kind.beta);
    detail::write_raw<double>(os, gram.context.tau);
    detail::write_raw<double>(os, gram.context.gamma);
    detail::write_raw<std::uint32_t>(os, static_cast<std::uint32_t>(gram.size()));
    for (std::uint32_t id : gram.model_ids) detail::write_raw<std::uint32_t>(os, id);
    for (std::size_t i = 0; i < gram.size(); ++i)
        for (std::size_t j = i; j < gram.size(); ++j)
            detail::write_raw<double>(os, gram.values[i][j]);
    if (!os) throw IoError("write failed: " + path);
}

inline GramMatrix load_gram(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    detail::expect_magic(is, "WGRM");
    if (detail::read_raw<std::uint8_t>(is) != 1) throw IoError("unsupported WGRM version");
    GramMatrix gram;
    const auto family = static_cast<DistanceFamily>(detail::read_raw<std::uint8_t>(is));
    gram.context.kind.family = family;
    if (family == DistanceFamily::Renyi) gram.context.kind.beta = detail::read_raw<double>(is);
    gram.context.tau = detail::read_raw<double>(is);
    gram.context.gamma = detail::read_raw<double>(is);
    const auto n = detail::read_raw<std::uint32_t>(is);
    gram.model_ids.resize(n);
    for (auto& id : gram.model_ids) id = detail::read_raw<std::uint32_t>(is);
    gram.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            gram.values[i][j] = gram.values[j][i] = detail::read_raw<double>(is);
    return gram;
}

// ---- JSON helpers ----

inline nlohmann::json hermitian_to_json(const HermitianMatrix& m) {
    return {{"hh", m.diag(0)},
            {"hv", m.diag(1)},
            {"vv", m.diag(2)},
            {"hhhv", {m.u01().real(), m.u01().imag()}},
            {"hhvv", {m.u02().real(), m.u02().imag()}},
            {"hvvv", {m.u12().real(), m.u12().imag()}}};
}

inline HermitianMatrix hermitian_from_json(const nlohmann::json& j) {
    return {j.at("hh").get<double>(),
            j.at("hv").get<double>(),
            j.at("vv").get<double>(),
            {j.at("hhhv")[0].get<double>(), j.at("hhhv")[1].get<double>()},
            {j.at("hhvv")[0].get<double>(), j.at("hhvv")[1].get<double>()},
            {j.at("hvvv")[0].get<double>(), j.at("hvvv")[1].get<double>()}};
}

inline nlohmann::json model_to_json(const MulticlassModel& model) {
    nlohmann::json j;
    j["strategy"] = model.strategy == MulticlassStrategy::OneAgainstAll ? "oaa" : "oao";
    j["classes"] = model.class_list;
    j["penalty"] = model.penalty;
    j["context"] = {{"kind", model.context.kind.name()},
                    {"beta", model.context.kind.beta},
                    {"tau", model.context.tau},
                    {"gamma", model.context.gamma}};
    for (const auto& b : model.binary_models) {
        nlohmann::json jb;
        jb["alpha"] = b.alpha;
        jb["labels"] = b.labels;
        jb["example_indices"] = b.example_indices;
        jb["bias"] = b.bias;
        jb["penalty"] = b.penalty;
        jb["support_ids"] = b.support_ids;
        jb["converged"] = b.converged;
        jb["iterations"] = b.iterations;
        j["binary_models"].push_back(jb);
    }
    return j;
}

inline void save_model(const MulticlassModel& model, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << model_to_json(model).dump(2) << '\n';
}

}  // namespace polsar::io
