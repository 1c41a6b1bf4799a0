#pragma once

// Shared test utilities: independent brute-force oracles and random-instance
// generators. Everything here deliberately avoids the library's query paths
// so it can serve as a second route for the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "kpdtm/point_cloud.hpp"
#include "kpdtm/rng.hpp"

namespace testsupport {

struct BruteNeighbor {
    double sq;
    std::size_t idx;
};

// Full sort of all points by (squared distance, index), first q kept.
inline std::vector<BruteNeighbor> brute_knn(const kpdtm::PointCloud& cloud,
                                            std::span<const double> x, std::size_t q) {
    std::vector<BruteNeighbor> all(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto p = cloud.point(i);
        double s = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            const double diff = x[a] - p[a];
            s += diff * diff;
        }
        all[i] = {s, i};
    }
    std::sort(all.begin(), all.end(), [](const BruteNeighbor& a, const BruteNeighbor& b) {
        return a.sq != b.sq ? a.sq < b.sq : a.idx < b.idx;
    });
    all.resize(q);
    return all;
}

inline double brute_dtm_sq(const kpdtm::PointCloud& cloud, std::span<const double> x,
                           std::size_t q) {
    const auto nn = brute_knn(cloud, x, q);
    double s = 0.0;
    for (const auto& c : nn) s += c.sq;
    return s / static_cast<double>(q);
}

inline kpdtm::PointCloud random_cloud(std::size_t n, std::size_t d, kpdtm::SplitMix64& g,
                                      double lo = -1.0, double hi = 1.0) {
    std::vector<double> coords(n * d);
    for (auto& c : coords) c = g.uniform(lo, hi);
    return kpdtm::PointCloud(d, std::move(coords));
}

inline std::vector<double> random_point(std::size_t d, kpdtm::SplitMix64& g, double lo = -1.5,
                                        double hi = 1.5) {
    std::vector<double> x(d);
    for (auto& c : x) c = g.uniform(lo, hi);
    return x;
}

}  // namespace testsupport
