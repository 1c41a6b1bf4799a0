#pragma once

#include <cmath>
#include <span>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kpdtm/point_cloud.hpp"

namespace kpdtm {

/// Size cap that keeps the cubic assignment solve instant; the oracle exists
/// for small-instance stability tests, not bulk transport.
inline constexpr std::size_t kMaxTransportPoints = 64;

/// Minimal total cost of a perfect matching in an n x n cost matrix
/// (row-major), by the Jonker-Volgenant shortest-augmenting-path algorithm
/// with potentials. Exact up to floating-point arithmetic.
inline double assignment_cost(const std::vector<double>& cost, std::size_t n) {
    if (cost.size() != n * n) throw std::invalid_argument("assignment_cost: bad matrix size");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);  // match[j]: row assigned to column j

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t j0 = 0;
        minv.assign(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += cost[(match[j] - 1) * n + (j - 1)];
    return total;
}

namespace detail {

inline void check_transport_pair(const PointCloud& a, const PointCloud& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("wasserstein: clouds must have equal sizes");
    if (a.dim() != b.dim()) throw std::invalid_argument("wasserstein: dimension mismatch");
    if (a.size() > kMaxTransportPoints)
        throw std::invalid_argument("wasserstein: size exceeds the exact-solver cap");
}

// Canonical argument order so that (a, b) and (b, a) run the identical
// computation and symmetry holds exactly, not just up to rounding.
inline bool transport_swap(const PointCloud& a, const PointCloud& b) {
    return b.coords() < a.coords();
}

template <class CostFn>
double mean_matching_cost(const PointCloud& a, const PointCloud& b, CostFn&& entry) {
    check_transport_pair(a, b);
    const PointCloud& lhs = transport_swap(a, b) ? b : a;
    const PointCloud& rhs = transport_swap(a, b) ? a : b;
    const std::size_t n = lhs.size();
    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i * n + j] = entry(lhs.point(i), rhs.point(j));
    return assignment_cost(cost, n) / static_cast<double>(n);
}

}  // namespace detail

/// W2 between the uniform empirical measures on two equal-size clouds:
/// sqrt of the minimal mean squared matching cost.
inline double wasserstein2(const PointCloud& a, const PointCloud& b) {
    return std::sqrt(detail::mean_matching_cost(
        a, b, [](std::span<const double> p, std::span<const double> q) {
            return squared_distance(p, q);
        }));
}

/// W1: minimal mean absolute matching cost.
inline double wasserstein1(const PointCloud& a, const PointCloud& b) {
    return detail::mean_matching_cost(
        a, b, [](std::span<const double> p, std::span<const double> q) {
            return std::sqrt(squared_distance(p, q));
        });
}

}  // namespace kpdtm
