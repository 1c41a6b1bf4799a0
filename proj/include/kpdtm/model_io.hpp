#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpdtm/power_model.hpp"

namespace kpdtm {

inline constexpr int kModelFormatVersion = 1;

/// Fit provenance stored alongside the model.
struct FitMeta {
    std::uint64_t seed = 0;
    std::size_t restarts = 0;
    std::size_t iterations = 0;
    std::size_t reseeds = 0;
    double final_loss = 0.0;
    std::string data_hash;  // fnv1a64 of the input CSV bytes, empty if unknown
};

struct LoadedModel {
    PowerModel model;
    FitMeta meta;
    int format_version = 0;
};

/// FNV-1a 64-bit hash, hex-encoded; used as a cheap dataset fingerprint.
inline std::string fnv1a_hex(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string("fnv1a64:") + buf;
}

inline std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("hash_file: cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a_hex(bytes.data(), bytes.size());
}

namespace detail {

inline nlohmann::json rows_json(const std::vector<double>& flat, std::size_t k, std::size_t d) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < k; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t a = 0; a < d; ++a) row.push_back(flat[i * d + a]);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<double> rows_flat(const nlohmann::json& rows, std::size_t d,
                                     const char* field) {
    std::vector<double> flat;
    flat.reserve(rows.size() * d);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != d)
            throw std::runtime_error(std::string("model file: bad row in ") + field);
        for (const auto& v : row) flat.push_back(v.get<double>());
    }
    return flat;
}

}  // namespace detail

/// Serializes the model as versioned JSON. nlohmann emits the shortest
/// decimal that parses back to the identical double, so save/load round-trips
/// every numeric field bit-exactly.
inline void save_model(const std::string& path, const PowerModel& model, const FitMeta& meta) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["q"] = model.q;
    j["n"] = model.n;
    j["d"] = model.d;
    j["anchors"] = detail::rows_json(model.anchors, model.k(), model.d);
    j["centers"] = detail::rows_json(model.centers, model.k(), model.d);
    j["sq_weights"] = model.sq_weights;
    j["fit"] = {{"seed", meta.seed},
                {"restarts", meta.restarts},
                {"iterations", meta.iterations},
                {"reseeds", meta.reseeds},
                {"final_loss", meta.final_loss}};
    j["provenance"] = {{"data_hash", meta.data_hash}};

    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_model: cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

inline LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;

    LoadedModel out;
    out.format_version = j.at("format_version").get<int>();
    if (out.format_version != kModelFormatVersion)
        throw std::runtime_error("load_model: unsupported format version " +
                                 std::to_string(out.format_version));
    out.model.q = j.at("q").get<std::size_t>();
    out.model.n = j.at("n").get<std::size_t>();
    out.model.d = j.at("d").get<std::size_t>();
    out.model.sq_weights = j.at("sq_weights").get<std::vector<double>>();
    out.model.anchors = detail::rows_flat(j.at("anchors"), out.model.d, "anchors");
    out.model.centers = detail::rows_flat(j.at("centers"), out.model.d, "centers");
    if (out.model.anchors.size() != out.model.k() * out.model.d ||
        out.model.centers.size() != out.model.k() * out.model.d)
        throw std::runtime_error("load_model: anchor/center/weight counts disagree");

    const auto& fit = j.at("fit");
    out.meta.seed = fit.at("seed").get<std::uint64_t>();
    out.meta.restarts = fit.at("restarts").get<std::size_t>();
    out.meta.iterations = fit.at("iterations").get<std::size_t>();
    out.meta.reseeds = fit.at("reseeds").get<std::size_t>();
    out.meta.final_loss = fit.at("final_loss").get<double>();
    out.meta.data_hash = j.at("provenance").at("data_hash").get<std::string>();
    return out;
}

}  // namespace kpdtm
