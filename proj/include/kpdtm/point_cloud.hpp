#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kpdtm {

/// Immutable ordered set of n points in R^d, row-major storage.
/// Indices 0..n-1 are stable for the lifetime of the cloud.
class PointCloud {
public:
    PointCloud() = default;

    PointCloud(std::size_t dim, std::vector<double> coords)
        : d_(dim), coords_(std::move(coords)) {
        if (d_ == 0) throw std::invalid_argument("PointCloud: dimension must be >= 1");
        if (coords_.empty() || coords_.size() % d_ != 0)
            throw std::invalid_argument("PointCloud: coordinate count not a multiple of dimension");
        n_ = coords_.size() / d_;
        for (double c : coords_)
            if (!std::isfinite(c))
                throw std::invalid_argument("PointCloud: non-finite coordinate");
    }

    PointCloud(std::initializer_list<std::initializer_list<double>> rows)
        : PointCloud(flatten(rows)) {}

    static PointCloud from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) throw std::invalid_argument("PointCloud: empty row list");
        std::size_t d = rows.front().size();
        std::vector<double> coords;
        coords.reserve(rows.size() * d);
        for (const auto& r : rows) {
            if (r.size() != d)
                throw std::invalid_argument("PointCloud: ragged rows");
            coords.insert(coords.end(), r.begin(), r.end());
        }
        return PointCloud(d, std::move(coords));
    }

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * d_, d_};
    }

    const std::vector<double>& coords() const { return coords_; }

    /// Componentwise min/max over all points.
    std::pair<std::vector<double>, std::vector<double>> bounding_box() const {
        std::vector<double> lo(coords_.begin(), coords_.begin() + d_);
        std::vector<double> hi = lo;
        for (std::size_t i = 1; i < n_; ++i) {
            const double* p = coords_.data() + i * d_;
            for (std::size_t a = 0; a < d_; ++a) {
                if (p[a] < lo[a]) lo[a] = p[a];
                if (p[a] > hi[a]) hi[a] = p[a];
            }
        }
        return {lo, hi};
    }

private:
    explicit PointCloud(std::pair<std::size_t, std::vector<double>> packed)
        : PointCloud(packed.first, std::move(packed.second)) {}

    static std::pair<std::size_t, std::vector<double>> flatten(
        std::initializer_list<std::initializer_list<double>> rows) {
        if (rows.size() == 0) throw std::invalid_argument("PointCloud: empty row list");
        std::size_t d = rows.begin()->size();
        std::vector<double> coords;
        coords.reserve(rows.size() * d);
        for (const auto& r : rows) {
            if (r.size() != d) throw std::invalid_argument("PointCloud: ragged rows");
            coords.insert(coords.end(), r.begin(), r.end());
        }
        return {d, std::move(coords)};
    }

    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<double> coords_;
};

/// Squared Euclidean distance, accumulated coordinate-by-coordinate.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return s;
}

inline double squared_norm(std::span<const double> a) {
    double s = 0.0;
    for (double c : a) s += c * c;
    return s;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace kpdtm
