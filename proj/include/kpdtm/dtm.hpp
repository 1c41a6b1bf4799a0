#pragma once

#include <span>
#include <vector>

#include "kpdtm/neighbors.hpp"
#include "kpdtm/point_cloud.hpp"

namespace kpdtm {

/// First and second moments of the q-nearest-neighbor sub-measure of a query
/// point: barycenter m, variance v (mean squared distance of the neighbors to
/// m) and second moment M (mean squared norm). M = |m|^2 + v.
struct LocalMoments {
    std::vector<double> m;
    double v = 0.0;
    double M = 0.0;
    std::size_t q = 0;
};

inline LocalMoments local_moments(const NeighborIndex& index, std::span<const double> x,
                                  std::size_t q) {
    const NeighborSet nn = index.knn(x, q);
    const std::size_t d = index.dim();
    LocalMoments out;
    out.q = q;
    out.m.assign(d, 0.0);
    for (std::size_t j = 0; j < q; ++j) {
        auto p = index.cloud().point(nn.indices[j]);
        for (std::size_t a = 0; a < d; ++a) out.m[a] += p[a];
        out.M += squared_norm(p);
    }
    for (std::size_t a = 0; a < d; ++a) out.m[a] /= static_cast<double>(q);
    out.M /= static_cast<double>(q);
    for (std::size_t j = 0; j < q; ++j)
        out.v += squared_distance(index.cloud().point(nn.indices[j]), out.m);
    out.v /= static_cast<double>(q);
    return out;
}

/// Squared empirical distance to measure at mass q/n: the mean squared
/// distance from x to its q nearest sample points. Equals |x - m|^2 + v of
/// local_moments (bias-variance identity).
inline double dtm_sq(const NeighborIndex& index, std::span<const double> x, std::size_t q) {
    const NeighborSet nn = index.knn(x, q);
    double s = 0.0;
    for (double sq : nn.sq_dists) s += sq;  // nondecreasing order, matches the sort oracle
    return s / static_cast<double>(q);
}

/// Slack in the semiconcavity inequality of x -> dtm_sq(x) - |x|^2:
///   [dtm_sq(x) - |x|^2 - 2<y - x, m_x>] - [dtm_sq(y) - |y|^2]
/// Nonnegative for every pair (x, y), since the q-NN sub-measure of x is a
/// feasible candidate for y.
inline double semiconcavity_gap(const NeighborIndex& index, std::span<const double> x,
                                std::span<const double> y, std::size_t q) {
    const LocalMoments mom = local_moments(index, x, q);
    const double dx = dtm_sq(index, x, q);
    const double dy = dtm_sq(index, y, q);

    double inner = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) inner += (y[a] - x[a]) * mom.m[a];
    const double lhs = dx - squared_norm(x) - 2.0 * inner;
    const double rhs = dy - squared_norm(y);
    return lhs - rhs;
}

}  // namespace kpdtm
